#include "gmwin/job.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "gmwin/errors.hpp"
#include "gmwin/graded.hpp"

namespace gmwin {

const std::vector<std::string> kJobOps = {"lcoh",  "sod",      "strata",    "chambers", "window",
                                          "index", "localize", "wallcross", "qsym",     "monodromy"};

namespace {

// ---------------------------------------------------------------- values --

struct Value {
    enum class Kind { scalar, list, tuple, range } kind = Kind::scalar;
    std::string scalar;
    std::vector<Value> items;  // list or tuple elements
    long long range_lo = 0, range_hi = 0;
    int line = 0, col = 0;
};

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line;
    int col_base;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    int col() const { return col_base + static_cast<int>(pos) + 1; }
    void skip_ws() {
        while (!done() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(line, col(), msg); }
};

Value parse_value(Cursor& c);

Value parse_bracketed(Cursor& c, char close, Value::Kind kind) {
    Value v;
    v.kind = kind;
    v.line = c.line;
    v.col = c.col();
    ++c.pos;  // consume open
    c.skip_ws();
    if (!c.done() && c.peek() == close) {
        ++c.pos;
        return v;
    }
    while (true) {
        v.items.push_back(parse_value(c));
        c.skip_ws();
        if (c.done()) c.fail(std::string("missing '") + close + "'");
        if (c.peek() == ',') {
            ++c.pos;
            c.skip_ws();
            continue;
        }
        if (c.peek() == close) {
            ++c.pos;
            return v;
        }
        c.fail(std::string("expected ',' or '") + close + "'");
    }
}

Value parse_value(Cursor& c) {
    c.skip_ws();
    if (c.done()) c.fail("missing value");
    if (c.peek() == '[') return parse_bracketed(c, ']', Value::Kind::list);
    if (c.peek() == '(') return parse_bracketed(c, ')', Value::Kind::tuple);

    Value v;
    v.line = c.line;
    v.col = c.col();
    int depth = 0;
    std::size_t start = c.pos;
    while (!c.done()) {
        const char ch = c.peek();
        if (depth == 0 && (ch == ',' || ch == ']' || ch == ')')) break;
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        ++c.pos;
    }
    v.scalar = c.text.substr(start, c.pos - start);
    while (!v.scalar.empty() && std::isspace(static_cast<unsigned char>(v.scalar.back()))) {
        v.scalar.pop_back();
    }
    if (v.scalar.empty()) c.fail("missing value");

    const auto dots = v.scalar.find("..");
    if (dots != std::string::npos) {
        try {
            v.range_lo = std::stoll(v.scalar.substr(0, dots));
            v.range_hi = std::stoll(v.scalar.substr(dots + 2));
            v.kind = Value::Kind::range;
        } catch (const std::exception&) {
            throw parse_error(v.line, v.col, "malformed range '" + v.scalar + "'");
        }
    }
    return v;
}

long long scalar_int(const Value& v, const char* what) {
    if (v.kind != Value::Kind::scalar) throw parse_error(v.line, v.col, std::string(what) + ": expected an integer");
    try {
        std::size_t used = 0;
        const long long n = std::stoll(v.scalar, &used);
        if (used != v.scalar.size()) throw std::invalid_argument("");
        return n;
    } catch (const std::exception&) {
        throw parse_error(v.line, v.col, std::string(what) + ": '" + v.scalar + "' is not an integer");
    }
}

Rational scalar_rational(const Value& v, const char* what) {
    if (v.kind != Value::Kind::scalar) throw parse_error(v.line, v.col, std::string(what) + ": expected a rational");
    try {
        return parse_rational(v.scalar);
    } catch (const std::exception&) {
        throw parse_error(v.line, v.col, std::string(what) + ": '" + v.scalar + "' is not a rational p/q");
    }
}

std::vector<long long> int_list(const Value& v, const char* what) {
    if (v.kind != Value::Kind::list) throw parse_error(v.line, v.col, std::string(what) + ": expected a list");
    std::vector<long long> out;
    for (const auto& item : v.items) out.push_back(scalar_int(item, what));
    return out;
}

// ------------------------------------------------------- domain parsing --

JobEntry parse_entry(const Value& v) {
    if (v.kind != Value::Kind::scalar) {
        throw parse_error(v.line, v.col, "matrix entries are scalars of the form c*x^e");
    }
    const std::string& s = v.scalar;
    JobEntry entry{Rational(1), 0};
    std::string coeff_text;
    std::string power_text;
    const auto x_at = s.find('x');
    if (x_at == std::string::npos) {
        coeff_text = s;
    } else {
        if (x_at + 1 >= s.size() || s[x_at + 1] != '^') {
            throw parse_error(v.line, v.col, "malformed entry '" + s + "': expected x^e");
        }
        power_text = s.substr(x_at + 2);
        coeff_text = s.substr(0, x_at);
        if (!coeff_text.empty()) {
            if (coeff_text.back() != '*') {
                throw parse_error(v.line, v.col, "malformed entry '" + s + "': expected c*x^e");
            }
            coeff_text.pop_back();
        }
    }
    if (!coeff_text.empty()) {
        try {
            entry.c = parse_rational(coeff_text);
        } catch (const std::exception&) {
            throw parse_error(v.line, v.col, "malformed coefficient '" + coeff_text + "'");
        }
    }
    if (!power_text.empty()) {
        long long e = 0;
        try {
            std::size_t used = 0;
            e = std::stoll(power_text, &used);
            if (used != power_text.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw parse_error(v.line, v.col, "malformed exponent '" + power_text + "'");
        }
        if (e < 0) {
            throw parse_error(v.line, v.col, "negative exponent in entry '" + s + "'");
        }
        entry.e = e;
    }
    if (entry.c == 0) entry.e = 0;
    return entry;
}

void parse_summand(const Value& v, KClass& cls) {
    if (v.kind != Value::Kind::scalar) {
        throw parse_error(v.line, v.col, "class summands look like O(d), -O(d) or O(d)*chi(m)");
    }
    std::string s = v.scalar;
    long long sign = 1;
    std::size_t pos = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        if (s[pos] == '-') sign = -1;
        ++pos;
    }
    auto expect = [&](const std::string& word) {
        if (s.compare(pos, word.size(), word) != 0) {
            throw parse_error(v.line, v.col, "malformed summand '" + s + "'");
        }
        pos += word.size();
    };
    auto read_int = [&]() {
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw parse_error(v.line, v.col, "malformed summand '" + s + "'");
        return std::stoll(s.substr(start, pos - start));
    };
    expect("O(");
    const long long d = read_int();
    expect(")");
    long long m = 0;
    if (pos < s.size()) {
        expect("*chi(");
        m = read_int();
        expect(")");
    }
    if (pos != s.size()) throw parse_error(v.line, v.col, "malformed summand '" + s + "'");
    cls.add_summand(static_cast<int>(d), static_cast<int>(m), sign);
}

struct Section {
    std::string name;
    int line = 0;
    std::vector<std::tuple<std::string, Value, int>> entries;  // key, value, line

    const Value* find(const std::string& key) const {
        for (const auto& [k, v, l] : entries) {
            if (k == key) return &v;
        }
        return nullptr;
    }
};

JobComplex parse_complex_section(const Section& sec) {
    JobComplex out;
    const Value* degrees = sec.find("degrees");
    if (!degrees || degrees->kind != Value::Kind::range) {
        throw parse_error(sec.line, 1, "[complex." + sec.name + "] needs degrees = lo..hi");
    }
    if (degrees->range_lo > degrees->range_hi) {
        throw parse_error(degrees->line, degrees->col, "empty degree range");
    }
    out.min_degree = static_cast<int>(degrees->range_lo);
    const int count = static_cast<int>(degrees->range_hi - degrees->range_lo) + 1;
    for (int k = 0; k < count; ++k) {
        const std::string key = "term." + std::to_string(out.min_degree + k);
        const Value* tv = sec.find(key);
        if (!tv) throw parse_error(sec.line, 1, "missing " + key);
        std::vector<int> degs;
        for (long long d : int_list(*tv, key.c_str())) degs.push_back(static_cast<int>(d));
        out.term_degrees.push_back(std::move(degs));
    }
    for (int k = 0; k + 1 < count; ++k) {
        const std::string key = "diff." + std::to_string(out.min_degree + k);
        const Value* dv = sec.find(key);
        const std::size_t rows = out.term_degrees[k + 1].size();
        const std::size_t cols = out.term_degrees[k].size();
        std::vector<std::vector<JobEntry>> mat(rows, std::vector<JobEntry>(cols, JobEntry{Rational(0), 0}));
        if (dv) {
            if (dv->kind != Value::Kind::list || dv->items.size() != rows) {
                throw parse_error(dv->line, dv->col, key + " needs " + std::to_string(rows) + " rows");
            }
            for (std::size_t i = 0; i < rows; ++i) {
                const Value& row = dv->items[i];
                if (row.kind != Value::Kind::list || row.items.size() != cols) {
                    throw parse_error(row.line, row.col,
                                      key + " rows need " + std::to_string(cols) + " entries");
                }
                for (std::size_t j = 0; j < cols; ++j) mat[i][j] = parse_entry(row.items[j]);
            }
        }
        out.diffs.push_back(std::move(mat));
    }
    return out;
}

GmSpace parse_space_section(const Section& sec) {
    const Value* kind = sec.find("kind");
    if (!kind || kind->kind != Value::Kind::scalar) {
        throw parse_error(sec.line, 1, "[space] needs kind = projective | affine");
    }
    const Value* weights = sec.find("weights");
    if (!weights) throw parse_error(sec.line, 1, "[space] needs weights = [..]");
    std::vector<int> w;
    for (long long x : int_list(*weights, "weights")) w.push_back(static_cast<int>(x));
    GmSpace space;
    try {
        if (kind->scalar == "projective") {
            space = GmSpace::projective(std::move(w));
        } else if (kind->scalar == "affine") {
            space = GmSpace::affine(std::move(w));
        } else {
            throw parse_error(kind->line, kind->col, "unknown kind '" + kind->scalar + "'");
        }
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception& e) {
        throw parse_error(sec.line, 1, e.what());
    }
    if (const Value* a = sec.find("a")) space.default_a = scalar_rational(*a, "a");
    return space;
}

TorusRep parse_rep_section(const Section& sec) {
    const Value* weights = sec.find("weights");
    if (!weights || weights->kind != Value::Kind::list) {
        throw parse_error(sec.line, 1, "[rep] needs weights = [..]");
    }
    bool allow_zero = false;
    if (const Value* az = sec.find("allow_zero_weights")) {
        if (az->scalar == "true") {
            allow_zero = true;
        } else if (az->scalar != "false") {
            throw parse_error(az->line, az->col, "allow_zero_weights must be true or false");
        }
    }
    const bool nested = !weights->items.empty() && weights->items.front().kind == Value::Kind::list;
    try {
        if (!nested) {
            std::vector<int> w;
            for (long long x : int_list(*weights, "weights")) w.push_back(static_cast<int>(x));
            return TorusRep::rank1(w, allow_zero);
        }
        std::vector<std::vector<int>> rows;
        int rank = -1;
        for (const auto& item : weights->items) {
            std::vector<int> row;
            for (long long x : int_list(item, "weights")) row.push_back(static_cast<int>(x));
            if (rank < 0) rank = static_cast<int>(row.size());
            rows.push_back(std::move(row));
        }
        return TorusRep::of_rank(std::max(rank, 1), std::move(rows), allow_zero);
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception& e) {
        throw parse_error(weights->line, weights->col, e.what());
    }
}

// ------------------------------------------------------- instantiation --

GradedComplex instantiate_graded(const JobComplex& jc) {
    std::vector<GradedFreeModule> terms;
    for (const auto& degs : jc.term_degrees) terms.push_back(GradedFreeModule{degs});
    std::vector<RationalMatrix> diffs;
    for (std::size_t k = 0; k < jc.diffs.size(); ++k) {
        const auto& src = jc.term_degrees[k];
        const auto& tgt = jc.term_degrees[k + 1];
        RationalMatrix m(tgt.size(), std::vector<Rational>(src.size(), Rational(0)));
        for (std::size_t i = 0; i < tgt.size(); ++i) {
            for (std::size_t j = 0; j < src.size(); ++j) {
                const JobEntry& e = jc.diffs[k][i][j];
                if (e.c == 0) continue;
                if (e.e != src[j] - tgt[i]) {
                    throw std::invalid_argument(
                        "entry exponent x^" + std::to_string(e.e) + " violates equivariance: "
                        "generator degrees force x^" + std::to_string(src[j] - tgt[i]));
                }
                m[i][j] = e.c;
            }
        }
        diffs.push_back(std::move(m));
    }
    return GradedComplex(jc.min_degree, std::move(terms), std::move(diffs));
}

EquivariantComplex instantiate_linear(const JobComplex& jc, const std::vector<int>& coord_degrees) {
    if (coord_degrees.size() != 1) {
        throw std::invalid_argument("declared complexes are univariate; the space must have one "
                                    "coordinate");
    }
    std::vector<std::vector<std::vector<MultiPoly>>> diffs;
    for (std::size_t k = 0; k < jc.diffs.size(); ++k) {
        const auto& src = jc.term_degrees[k];
        const auto& tgt = jc.term_degrees[k + 1];
        std::vector<std::vector<MultiPoly>> m(tgt.size(), std::vector<MultiPoly>(src.size()));
        for (std::size_t i = 0; i < tgt.size(); ++i) {
            for (std::size_t j = 0; j < src.size(); ++j) {
                const JobEntry& e = jc.diffs[k][i][j];
                if (e.c == 0) continue;
                m[i][j][{static_cast<int>(e.e)}] = e.c;
            }
        }
        diffs.push_back(std::move(m));
    }
    return EquivariantComplex(coord_degrees, jc.min_degree, jc.term_degrees, std::move(diffs));
}

}  // namespace

JobSpec parse_input(const std::string& text, const std::string& op_override) {
    std::vector<Section> sections;
    Section* current = nullptr;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);

        if (line.front() == '[') {
            if (line.back() != ']') throw parse_error(line_no, static_cast<int>(last) + 1, "missing ']'");
            sections.push_back(Section{line.substr(1, line.size() - 2), line_no, {}});
            current = &sections.back();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw parse_error(line_no, static_cast<int>(first) + 1, "expected key = value");
        }
        if (!current) throw parse_error(line_no, static_cast<int>(first) + 1, "key outside any section");
        std::string key = line.substr(0, eq);
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
        std::string rest = line.substr(eq + 1);
        Cursor c{rest, 0, line_no, static_cast<int>(first + eq) + 1};
        Value v = parse_value(c);
        c.skip_ws();
        if (!c.done()) c.fail("trailing input after value");
        current->entries.emplace_back(key, std::move(v), line_no);
    }

    JobSpec job;
    for (const auto& sec : sections) {
        if (sec.name == "space") {
            job.space = parse_space_section(sec);
        } else if (sec.name == "rep") {
            job.rep = parse_rep_section(sec);
        } else if (sec.name.rfind("class.", 0) == 0) {
            KClass cls;
            const Value* summands = sec.find("summands");
            if (!summands || summands->kind != Value::Kind::list) {
                throw parse_error(sec.line, 1, "[" + sec.name + "] needs summands = [..]");
            }
            for (const auto& s : summands->items) parse_summand(s, cls);
            job.classes[sec.name.substr(6)] = std::move(cls);
        } else if (sec.name.rfind("complex.", 0) == 0) {
            Section named = sec;
            named.name = sec.name.substr(8);
            job.complexes[named.name] = parse_complex_section(named);
        } else if (sec.name == "job") {
            for (const auto& [key, v, l] : sec.entries) {
                if (key == "op") {
                    job.op = v.scalar;
                } else if (key == "w") {
                    job.w = scalar_int(v, "w");
                } else if (key == "a") {
                    job.a = scalar_rational(v, "a");
                } else if (key == "a1") {
                    job.a1 = scalar_rational(v, "a1");
                } else if (key == "a2") {
                    job.a2 = scalar_rational(v, "a2");
                } else if (key == "theta") {
                    if (v.kind != Value::Kind::list) throw parse_error(v.line, v.col, "theta is a list");
                    for (const auto& t : v.items) job.theta.push_back(scalar_rational(t, "theta"));
                } else if (key == "theta0") {
                    job.theta0 = scalar_rational(v, "theta0");
                } else if (key == "legs") {
                    if (v.kind != Value::Kind::list) throw parse_error(v.line, v.col, "legs is a list");
                    for (const auto& leg : v.items) {
                        if (leg.kind != Value::Kind::tuple || leg.items.size() != 2) {
                            throw parse_error(leg.line, leg.col, "legs look like (+, 1/2)");
                        }
                        const std::string& sign = leg.items[0].scalar;
                        if (sign != "+" && sign != "-") {
                            throw parse_error(leg.items[0].line, leg.items[0].col,
                                              "leg sign must be + or -");
                        }
                        job.legs.push_back(
                            {sign == "+" ? +1 : -1, scalar_rational(leg.items[1], "leg theta")});
                    }
                } else if (key == "complex") {
                    job.complex_name = v.scalar;
                } else if (key == "class") {
                    job.class_name = v.scalar;
                } else if (key == "order") {
                    job.order = scalar_int(v, "order");
                } else if (key == "window") {
                    if (v.kind != Value::Kind::range) {
                        throw parse_error(v.line, v.col, "window is a range lo..hi");
                    }
                    job.window = {v.range_lo, v.range_hi};
                } else {
                    throw parse_error(l, 1, "unknown [job] key '" + key + "'");
                }
            }
        } else {
            throw parse_error(sec.line, 1, "unknown section [" + sec.name + "]");
        }
    }

    if (job.op.empty()) {
        job.op = op_override;
    } else if (!op_override.empty() && job.op != op_override) {
        throw std::invalid_argument("the input declares op = " + job.op
                                    + " but the subcommand is " + op_override);
    }
    if (std::find(kJobOps.begin(), kJobOps.end(), job.op) == kJobOps.end()) {
        throw std::invalid_argument(job.op.empty() ? "no operation given"
                                                   : "unknown operation '" + job.op + "'");
    }

    auto need = [&](bool ok, const std::string& what) {
        if (!ok) throw std::invalid_argument("op " + job.op + " needs " + what);
    };
    auto need_complex = [&]() {
        need(job.complex_name.has_value(), "complex = NAME");
        need(job.complexes.count(*job.complex_name) > 0, "a [complex." + *job.complex_name + "] section");
    };
    auto need_class = [&]() {
        need(job.class_name.has_value(), "class = NAME");
        need(job.classes.count(*job.class_name) > 0, "a [class." + *job.class_name + "] section");
    };
    if (job.op == "lcoh" || job.op == "sod") {
        need_complex();
        need(job.w.has_value(), "w = <integer>");
    } else if (job.op == "strata") {
        need(job.space.has_value(), "a [space] section");
        need(job.a.has_value() || job.space->default_a.has_value(), "a = p/q");
    } else if (job.op == "chambers") {
        need(job.space.has_value(), "a [space] section");
    } else if (job.op == "window") {
        need(job.space.has_value(), "a [space] section");
        need(!job.theta.empty(), "theta = [..]");
        need(job.a.has_value() || job.space->default_a.has_value(), "a = p/q");
        need(job.class_name.has_value() != job.complex_name.has_value(),
             "exactly one of class = NAME or complex = NAME");
        if (job.class_name) need_class();
        if (job.complex_name) need_complex();
    } else if (job.op == "index") {
        need(job.space.has_value(), "a [space] section");
        need_class();
    } else if (job.op == "localize") {
        need(job.space.has_value(), "a [space] section");
        need(job.a.has_value() || job.space->default_a.has_value(), "a = p/q");
        need_class();
    } else if (job.op == "wallcross") {
        need(job.space.has_value(), "a [space] section");
        need(job.a1.has_value() && job.a2.has_value(), "a1 = p/q and a2 = p/q");
        need_class();
    } else if (job.op == "qsym") {
        need(job.rep.has_value(), "a [rep] section");
    } else if (job.op == "monodromy") {
        need(job.rep.has_value(), "a [rep] section");
        need(job.theta0.has_value(), "theta0 = p/q");
    }
    return job;
}

// --------------------------------------------------------------- render --

namespace {

std::string entry_text(const JobEntry& e) {
    if (e.c == 0) return "0";
    return rational_to_string(e.c) + "*x^" + std::to_string(e.e);
}

std::string summand_text(int d, int m, bool negative) {
    std::string s = negative ? "-O(" : "O(";
    s += std::to_string(d) + ")";
    if (m != 0) s += "*chi(" + std::to_string(m) + ")";
    return s;
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, F&& f) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += f(items[i]);
    }
    return out;
}

}  // namespace

std::string render_input(const JobSpec& job) {
    std::ostringstream out;
    if (job.space) {
        out << "[space]\n";
        out << "kind = " << (job.space->kind == SpaceKind::projective ? "projective" : "affine")
            << "\n";
        out << "weights = [" << join(job.space->weights, [](int w) { return std::to_string(w); })
            << "]\n";
        if (job.space->default_a) out << "a = " << rational_to_string(*job.space->default_a) << "\n";
        out << "\n";
    }
    if (job.rep) {
        out << "[rep]\n";
        if (job.rep->rank == 1) {
            out << "weights = ["
                << join(job.rep->weights, [](const std::vector<int>& w) { return std::to_string(w[0]); })
                << "]\n";
        } else {
            out << "weights = [" << join(job.rep->weights, [](const std::vector<int>& w) {
                return "[" + join(w, [](int x) { return std::to_string(x); }) + "]";
            }) << "]\n";
        }
        if (job.rep->allow_zero_weights) out << "allow_zero_weights = true\n";
        out << "\n";
    }
    for (const auto& [name, cls] : job.classes) {
        out << "[class." << name << "]\n";
        std::vector<std::string> parts;
        for (const auto& [dm, mult] : cls.summands()) {
            const long long count = mult < 0 ? -mult : mult;
            for (long long k = 0; k < count; ++k) {
                parts.push_back(summand_text(dm.first, dm.second, mult < 0));
            }
        }
        out << "summands = [" << join(parts, [](const std::string& s) { return s; }) << "]\n\n";
    }
    for (const auto& [name, jc] : job.complexes) {
        out << "[complex." << name << "]\n";
        const int hi = jc.min_degree + static_cast<int>(jc.term_degrees.size()) - 1;
        out << "degrees = " << jc.min_degree << ".." << hi << "\n";
        for (std::size_t k = 0; k < jc.term_degrees.size(); ++k) {
            out << "term." << (jc.min_degree + static_cast<int>(k)) << " = ["
                << join(jc.term_degrees[k], [](int d) { return std::to_string(d); }) << "]\n";
        }
        for (std::size_t k = 0; k < jc.diffs.size(); ++k) {
            out << "diff." << (jc.min_degree + static_cast<int>(k)) << " = ["
                << join(jc.diffs[k],
                        [](const std::vector<JobEntry>& row) {
                            return "[" + join(row, [](const JobEntry& e) { return entry_text(e); })
                                   + "]";
                        })
                << "]\n";
        }
        out << "\n";
    }
    out << "[job]\n";
    out << "op = " << job.op << "\n";
    if (job.complex_name) out << "complex = " << *job.complex_name << "\n";
    if (job.class_name) out << "class = " << *job.class_name << "\n";
    if (job.w) out << "w = " << *job.w << "\n";
    if (job.a) out << "a = " << rational_to_string(*job.a) << "\n";
    if (job.a1) out << "a1 = " << rational_to_string(*job.a1) << "\n";
    if (job.a2) out << "a2 = " << rational_to_string(*job.a2) << "\n";
    if (!job.theta.empty()) {
        out << "theta = ["
            << join(job.theta, [](const Rational& t) { return rational_to_string(t); }) << "]\n";
    }
    if (job.theta0) out << "theta0 = " << rational_to_string(*job.theta0) << "\n";
    if (!job.legs.empty()) {
        out << "legs = [" << join(job.legs, [](const JobLeg& l) {
            return std::string("(") + (l.ell > 0 ? "+" : "-") + ", " + rational_to_string(l.theta)
                   + ")";
        }) << "]\n";
    }
    if (job.order) out << "order = " << *job.order << "\n";
    if (job.window) out << "window = " << job.window->first << ".." << job.window->second << "\n";
    return out.str();
}

// ------------------------------------------------------------------ run --

namespace {

void put(Report& r, const std::string& key, const std::string& value) { r.machine[key] = value; }
void put(Report& r, const std::string& key, long long value) { r.machine[key] = std::to_string(value); }
void put(Report& r, const std::string& key, const Rational& value) {
    r.machine[key] = rational_to_string(value);
}

void put_table(Report& r, const std::string& prefix, const CohomologyTable& t) {
    put(r, prefix + ".window.lo", static_cast<long long>(t.weight_lo));
    put(r, prefix + ".window.hi", static_cast<long long>(t.weight_hi));
    for (const auto& [key, d] : t.dims) {
        put(r, prefix + ".h." + std::to_string(key.first) + "." + std::to_string(key.second), d);
    }
}

std::string table_text(const CohomologyTable& t) {
    std::ostringstream out;
    out << "weight window [" << t.weight_lo << ", " << t.weight_hi << "]\n";
    if (t.dims.empty()) {
        out << "  (zero)\n";
        return out.str();
    }
    out << "  degree  weight  dim\n";
    for (const auto& [key, d] : t.dims) {
        out << "  " << key.first << "  " << key.second << "  " << d << "\n";
    }
    return out.str();
}

Rational job_a(const JobSpec& job) {
    if (job.a) return *job.a;
    return *job.space->default_a;
}

StabilityOptions stability_from(const RunOptions& options, const JobSpec& job) {
    StabilityOptions opts;
    const auto order = options.order ? options.order : job.order;
    if (order) opts.j_max = static_cast<int>(*order);
    return opts;
}

}  // namespace

std::string Report::machine_text() const {
    std::ostringstream out;
    for (const auto& [k, v] : machine) out << k << " = " << v << "\n";
    return out.str();
}

std::string Report::text(bool machine_format) const { return machine_format ? machine_text() : table; }

Report run(const JobSpec& job, const RunOptions& options) {
    Report r;
    put(r, "op", job.op);
    std::ostringstream tbl;

    const auto view = options.window ? options.window : job.window;
    auto clip = [&](CohomologyTable t) {
        if (view) {
            const int lo = std::max<long long>(t.weight_lo, view->first);
            const int hi = std::min<long long>(t.weight_hi, view->second);
            t = t.restricted(lo, hi);
        }
        return t;
    };

    if (job.op == "lcoh" || job.op == "sod") {
        const GradedComplex F = instantiate_graded(job.complexes.at(*job.complex_name));
        const int w = static_cast<int>(*job.w);
        const StabilityOptions opts = stability_from(options, job);
        if (job.op == "lcoh") {
            const CohomologyTable t = clip(restricted_local_cohomology(F, w, opts));
            put_table(r, "result", t);
            tbl << "restricted local cohomology at w = " << w << "\n" << table_text(t);
        } else {
            SodDecomposition s = sod_decompose(F, w, opts);
            s.lower = clip(s.lower);
            s.middle = clip(s.middle);
            s.upper = clip(s.upper);
            put_table(r, "lower", s.lower);
            put_table(r, "middle", s.middle);
            put_table(r, "upper", s.upper);
            put(r, "middle.multiplicity", s.middle_multiplicity);
            tbl << "semiorthogonal pieces at w = " << w << "\n";
            tbl << "lower (weights below the cut):\n" << table_text(s.lower);
            tbl << "middle (multiplicity " << s.middle_multiplicity << " of the window generator):\n"
                << table_text(s.middle);
            tbl << "upper (unstable weights at or above the cut):\n" << table_text(s.upper);
        }
    } else if (job.op == "strata") {
        const Rational a = job_a(job);
        const auto strata = unstable_locus(*job.space, a);
        put(r, "a", a);
        put(r, "strata.count", static_cast<long long>(strata.size()));
        tbl << "unstable locus at a = " << rational_to_string(a) << "\n";
        tbl << "  stratum  component  sign  dim  condition\n";
        for (std::size_t i = 0; i < strata.size(); ++i) {
            const auto& s = strata[i];
            const std::string p = "stratum." + std::to_string(i);
            put(r, p + ".component", static_cast<long long>(s.component));
            put(r, p + ".sign", std::string(1, s.sign));
            put(r, p + ".dim", static_cast<long long>(s.dimension));
            put(r, p + ".condition", s.condition);
            tbl << "  " << i << "  " << s.component << "  " << s.sign << "  " << s.dimension << "  "
                << s.condition << "\n";
        }
    } else if (job.op == "chambers") {
        const Chambers c = chambers(*job.space);
        put(r, "critical.count", static_cast<long long>(c.critical_values.size()));
        for (std::size_t i = 0; i < c.critical_values.size(); ++i) {
            put(r, "critical." + std::to_string(i), static_cast<long long>(c.critical_values[i]));
        }
        put(r, "intervals", static_cast<long long>(c.interval_count()));
        tbl << "critical values:";
        for (int v : c.critical_values) tbl << " " << v;
        tbl << "\nopen intervals: " << c.interval_count() << "\n";
        const auto comps = fixed_components(*job.space);
        for (const auto& z : comps) {
            const std::string p = "component." + std::to_string(z.index);
            put(r, p + ".w", static_cast<long long>(z.w));
            put(r, p + ".wall_type", wall_type_name(wall_type(*job.space, z.index)));
            tbl << "component " << z.index << ": w = " << z.w << ", wall type "
                << wall_type_name(wall_type(*job.space, z.index)) << "\n";
        }
    } else if (job.op == "window") {
        WindowSpec spec{job.theta, job_a(job)};
        MembershipReport m;
        if (job.class_name) {
            m = window_membership(*job.space, job.classes.at(*job.class_name), spec);
        } else {
            const EquivariantComplex E =
                instantiate_linear(job.complexes.at(*job.complex_name), job.space->weights);
            m = window_membership(*job.space, E, spec);
        }
        put(r, "member", std::string(m.member ? "true" : "false"));
        tbl << "window membership at a = " << rational_to_string(spec.a) << ": "
            << (m.member ? "member" : "not a member") << "\n";
        for (const auto& cm : m.components) {
            const std::string p = "component." + std::to_string(cm.component);
            put(r, p + ".interval.lo", cm.lo);
            put(r, p + ".interval.hi", cm.hi);
            tbl << "component " << cm.component << ": interval [" << rational_to_string(cm.lo)
                << ", " << rational_to_string(cm.hi) << "]\n";
            for (const auto& [w, mult] : cm.weights) {
                put(r, p + ".weight." + std::to_string(w), mult);
                const bool bad =
                    std::find(cm.violations.begin(), cm.violations.end(), w) != cm.violations.end();
                tbl << "  weight " << w << " (multiplicity " << mult << ")"
                    << (bad ? "  <- outside" : "") << "\n";
            }
        }
    } else if (job.op == "index" || job.op == "localize") {
        const KClass& F = job.classes.at(*job.class_name);
        IndexReport rep;
        if (job.op == "index") {
            rep = atiyah_bott_index(*job.space, F);
            tbl << "fixed-point index decomposition (empty semistable chamber)\n";
        } else {
            const Rational a = job_a(job);
            rep = semistable_index(*job.space, a, F);
            put(r, "a", a);
            tbl << "index decomposition at a = " << rational_to_string(a) << "\n";
        }
        put(r, "total", rep.total);
        put(r, "semistable", rep.semistable);
        tbl << "total = " << rep.total << ", semistable term = " << rep.semistable << "\n";
        tbl << "  component  side  chi\n";
        for (const auto& row : rep.rows) {
            const std::string p = "contribution." + std::to_string(row.component);
            put(r, p + ".side", std::string(1, row.side));
            put(r, p + ".chi", row.chi);
            tbl << "  " << row.component << "  " << row.side << "  " << row.chi << "\n";
        }
    } else if (job.op == "wallcross") {
        const WallCrossingReport wc = wall_crossing_delta(*job.space, *job.a1, *job.a2,
                                                          job.classes.at(*job.class_name));
        put(r, "a1", *job.a1);
        put(r, "a2", *job.a2);
        put(r, "delta", wc.delta);
        tbl << "semistable index difference chi(a1) - chi(a2) = " << wc.delta << "\n";
        for (const auto& wall : wc.walls) {
            put(r, "wall." + std::to_string(wall.component) + ".delta", wall.delta);
            tbl << "  wall at component " << wall.component << ": contributes " << wall.delta
                << "\n";
        }
    } else if (job.op == "qsym") {
        const QsymReport q = quasi_symmetric(*job.rep);
        put(r, "quasi_symmetric", std::string(q.ok ? "true" : "false"));
        tbl << "quasi-symmetric: " << (q.ok ? "true" : "false") << "\n";
        if (q.failing_line) {
            std::string dir;
            for (std::size_t i = 0; i < q.failing_line->size(); ++i) {
                if (i) dir += ",";
                dir += std::to_string((*q.failing_line)[i]);
            }
            put(r, "failing_line", dir);
            tbl << "failing line direction: (" << dir << ")\n";
        }
    } else if (job.op == "monodromy") {
        std::vector<PathLeg> legs;
        for (const auto& l : job.legs) legs.push_back({l.ell, l.theta});
        const MonodromyMatrix m = monodromy_matrix(*job.rep, *job.theta0, legs);
        put(r, "det", m.det.str());
        put(r, "path", m.path);
        put(r, "size", static_cast<long long>(m.matrix.rows()));
        for (int i = 0; i < m.matrix.rows(); ++i) {
            std::string row;
            for (int j = 0; j < m.matrix.cols(); ++j) {
                if (j) row += " ";
                row += m.matrix.at(i, j).str();
            }
            put(r, "row." + std::to_string(i), row);
        }
        tbl << "path: " << m.path << "\n";
        tbl << "monodromy matrix (det " << m.det.str() << "):\n" << m.matrix.to_string();
    }

    r.table = tbl.str();
    return r;
}

}  // namespace gmwin
