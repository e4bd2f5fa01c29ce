#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gmwin/errors.hpp"
#include "gmwin/graded.hpp"
#include "gmwin/job.hpp"
#include "gmwin/localization.hpp"
#include "gmwin/spaces.hpp"
#include "gmwin/walls.hpp"

namespace py = pybind11;
using namespace gmwin;

namespace {

Rational to_rational(const py::object& obj) {
    return parse_rational(py::str(obj).cast<std::string>());
}

py::object big_int(const Int& n) {
    const std::string s = n.str();
    return py::reinterpret_steal<py::object>(PyLong_FromString(s.c_str(), nullptr, 10));
}

py::dict table_dict(const CohomologyTable& t) {
    py::dict out;
    for (const auto& [key, d] : t.dims) {
        out[py::make_tuple(key.first, key.second)] = d;
    }
    return out;
}

py::list matrix_rows(const IntMatrix& m) {
    py::list rows;
    for (int i = 0; i < m.rows(); ++i) {
        py::list row;
        for (int j = 0; j < m.cols(); ++j) row.append(big_int(m.at(i, j)));
        rows.append(row);
    }
    return rows;
}

Direction to_direction(const std::string& name) {
    if (name == "bounded-above" || name == "above" || name == "+") return Direction::bounded_above;
    if (name == "bounded-below" || name == "below" || name == "-") return Direction::bounded_below;
    throw std::invalid_argument("direction must be bounded-above or bounded-below");
}

GradedComplex complex_from_terms(int min_degree, const std::vector<std::vector<int>>& terms,
                                 const std::vector<std::vector<std::vector<py::object>>>& diffs) {
    JobComplex jc;
    jc.min_degree = min_degree;
    jc.term_degrees = terms;
    for (std::size_t k = 0; k < diffs.size(); ++k) {
        std::vector<std::vector<JobEntry>> rows;
        for (const auto& row : diffs[k]) {
            std::vector<JobEntry> entries;
            for (const auto& cell : row) {
                // cell is (coefficient, exponent) with a rational-like coefficient
                const auto pair = cell.cast<py::tuple>();
                entries.push_back({to_rational(pair[0]), pair[1].cast<long long>()});
            }
            rows.push_back(std::move(entries));
        }
        jc.diffs.push_back(std::move(rows));
    }
    // round-trip through the canonical text form to reuse its validation
    JobSpec job;
    job.op = "lcoh";
    job.w = 0;
    job.complex_name = "E";
    job.complexes["E"] = jc;
    const JobSpec parsed = parse_input(render_input(job));
    std::vector<GradedFreeModule> modules;
    for (const auto& degs : parsed.complexes.at("E").term_degrees) {
        modules.push_back(GradedFreeModule{degs});
    }
    std::vector<RationalMatrix> mats;
    const auto& pc = parsed.complexes.at("E");
    for (std::size_t k = 0; k < pc.diffs.size(); ++k) {
        RationalMatrix m(pc.term_degrees[k + 1].size(),
                         std::vector<Rational>(pc.term_degrees[k].size(), Rational(0)));
        for (std::size_t i = 0; i < pc.diffs[k].size(); ++i) {
            for (std::size_t j = 0; j < pc.diffs[k][i].size(); ++j) m[i][j] = pc.diffs[k][i][j].c;
        }
        mats.push_back(std::move(m));
    }
    return GradedComplex(pc.min_degree, std::move(modules), std::move(mats));
}

TorusRep rep_from_weights(const py::object& weights, bool allow_zero) {
    const py::sequence seq = weights.cast<py::sequence>();
    if (seq.size() && py::isinstance<py::sequence>(seq[0]) && !py::isinstance<py::str>(seq[0])) {
        std::vector<std::vector<int>> rows;
        int rank = 1;
        for (const auto& row : seq) {
            rows.push_back(row.cast<std::vector<int>>());
            rank = static_cast<int>(rows.back().size());
        }
        return TorusRep::of_rank(rank, std::move(rows), allow_zero);
    }
    return TorusRep::rank1(weights.cast<std::vector<int>>(), allow_zero);
}

py::dict membership_dict(const MembershipReport& m) {
    py::dict out;
    out["member"] = m.member;
    py::list comps;
    for (const auto& cm : m.components) {
        py::dict c;
        c["component"] = cm.component;
        c["lo"] = rational_to_string(cm.lo);
        c["hi"] = rational_to_string(cm.hi);
        py::dict weights;
        for (const auto& [w, mult] : cm.weights) weights[py::int_(w)] = mult;
        c["weights"] = weights;
        c["violations"] = cm.violations;
        comps.append(c);
    }
    out["components"] = comps;
    return out;
}

py::dict index_dict(const IndexReport& r) {
    py::dict out;
    out["total"] = r.total;
    out["semistable"] = r.semistable;
    py::list rows;
    for (const auto& row : r.rows) {
        rows.append(py::make_tuple(row.component, std::string(1, row.side), row.chi));
    }
    out["contributions"] = rows;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact window, wall-crossing and fixed-point index computations for Gm-actions";

    py::register_exception<certification_error>(m, "CertificationError");

    py::class_<LaurentPolynomial>(m, "LaurentPolynomial")
        .def(py::init([](const std::map<int, std::int64_t>& coeffs) {
                 return LaurentPolynomial(coeffs);
             }),
             py::arg("coefficients"))
        .def_static("monomial", &LaurentPolynomial::monomial, py::arg("weight"), py::arg("c") = 1)
        .def("coefficient", &LaurentPolynomial::coefficient)
        .def("coefficients", [](const LaurentPolynomial& p) { return p.coefficients(); })
        .def("is_zero", &LaurentPolynomial::is_zero)
        .def("__add__", [](const LaurentPolynomial& a, const LaurentPolynomial& b) { return a + b; })
        .def("__sub__", [](const LaurentPolynomial& a, const LaurentPolynomial& b) { return a - b; })
        .def("__mul__", [](const LaurentPolynomial& a, const LaurentPolynomial& b) { return a * b; })
        .def("__eq__", [](const LaurentPolynomial& a, const LaurentPolynomial& b) { return a == b; })
        .def("__repr__", &LaurentPolynomial::to_string);

    py::class_<LaurentSeries>(m, "LaurentSeries")
        .def_property_readonly("truncation_order", &LaurentSeries::truncation_order)
        .def_property_readonly("direction",
                               [](const LaurentSeries& s) { return direction_name(s.direction()); })
        .def("coefficient", &LaurentSeries::coefficient)
        .def("coefficients", [](const LaurentSeries& s) { return s.coefficients(); })
        .def("__repr__", &LaurentSeries::to_string);

    m.def("euler_class", [](const std::vector<int>& weights) { return euler_class(WeightList(weights)); },
          py::arg("weights"), "Product of (1 - t^{-c}) over the weight list.");
    m.def(
        "invert_euler",
        [](const std::vector<int>& weights, const std::string& direction, std::optional<int> order) {
            const WeightList n(weights);
            const Direction dir = to_direction(direction);
            return invert_euler(n, dir, order ? *order : default_inversion_order(n, dir));
        },
        py::arg("weights"), py::arg("direction"), py::arg("order") = py::none(),
        "Inverse of the Euler class in the chosen completion, certified exact.");

    py::class_<GradedComplex>(m, "GradedComplex")
        .def_static("line_bundle", &GradedComplex::line_bundle, py::arg("n"))
        .def_static("torsion_module", &GradedComplex::torsion_module, py::arg("j"), py::arg("d"))
        .def_static("from_terms", &complex_from_terms, py::arg("min_degree"), py::arg("terms"),
                    py::arg("diffs"),
                    "Terms are generator-degree lists; diff entries are (coefficient, exponent).")
        .def("min_degree", &GradedComplex::min_degree)
        .def("max_degree", &GradedComplex::max_degree)
        .def("__eq__", [](const GradedComplex& a, const GradedComplex& b) { return a == b; });
    m.def("koszul_truncation", &koszul_truncation, py::arg("j"));
    m.def("k_point", &k_point, py::arg("j"));
    m.def("tensor", &tensor);
    m.def(
        "cohomology",
        [](const GradedComplex& f, std::optional<int> lo, std::optional<int> hi) {
            const WeightWindow win = default_window(f);
            return table_dict(cohomology_in_window(f, lo ? *lo : win.lo, hi ? *hi : win.hi));
        },
        py::arg("complex"), py::arg("lo") = py::none(), py::arg("hi") = py::none(),
        "Dict keyed by (cohomological degree, weight).");
    m.def(
        "restricted_local_cohomology",
        [](const GradedComplex& f, int w) { return table_dict(restricted_local_cohomology(f, w)); },
        py::arg("complex"), py::arg("w"));
    m.def(
        "beta_lower", [](const GradedComplex& f, int w) { return table_dict(beta_lower(f, w)); },
        py::arg("complex"), py::arg("w"));
    m.def(
        "rhom",
        [](const GradedComplex& e, const GradedComplex& f, bool invariants_only) {
            return table_dict(rhom(e, f, invariants_only));
        },
        py::arg("source"), py::arg("target"), py::arg("invariants_only") = true);
    m.def(
        "sod_decompose",
        [](const GradedComplex& f, int w) {
            const auto s = sod_decompose(f, w);
            py::dict out;
            out["lower"] = table_dict(s.lower);
            out["middle"] = table_dict(s.middle);
            out["upper"] = table_dict(s.upper);
            out["middle_multiplicity"] = s.middle_multiplicity;
            return out;
        },
        py::arg("complex"), py::arg("w"));

    py::class_<GmSpace>(m, "GmSpace")
        .def_static("projective", &GmSpace::projective, py::arg("weights"))
        .def_static("affine", &GmSpace::affine, py::arg("coordinate_degrees"))
        .def_property_readonly("weights", [](const GmSpace& s) { return s.weights; })
        .def_property_readonly("kind", [](const GmSpace& s) {
            return s.kind == SpaceKind::projective ? "projective" : "affine";
        });
    m.def("fixed_components", [](const GmSpace& space) {
        py::list out;
        for (const auto& z : fixed_components(space)) {
            py::dict d;
            d["index"] = z.index;
            d["value"] = z.value;
            d["dimension"] = z.dimension;
            d["w"] = z.w;
            d["normal_weights"] = z.normal_weights;
            d["tangent_weights"] = z.tangent_weights;
            d["eta_plus"] = z.eta_plus;
            d["eta_minus"] = z.eta_minus;
            d["canonical_weight"] = z.canonical_weight;
            out.append(d);
        }
        return out;
    });
    m.def("unstable_locus", [](const GmSpace& space, const py::object& a) {
        py::list out;
        for (const auto& s : unstable_locus(space, to_rational(a))) {
            py::dict d;
            d["component"] = s.component;
            d["sign"] = std::string(1, s.sign);
            d["dimension"] = s.dimension;
            d["condition"] = s.condition;
            out.append(d);
        }
        return out;
    });
    m.def("chambers", [](const GmSpace& space) { return chambers(space).critical_values; });
    m.def("wall_type",
          [](const GmSpace& space, int i) { return wall_type_name(wall_type(space, i)); });
    m.def("window_bounds", [](const GmSpace& space, const std::vector<py::object>& theta,
                              const py::object& a) {
        WindowSpec spec;
        for (const auto& t : theta) spec.theta.push_back(to_rational(t));
        spec.a = to_rational(a);
        py::list out;
        for (const auto& b : window_bounds(space, spec)) {
            out.append(py::make_tuple(b.component, rational_to_string(b.lo),
                                      rational_to_string(b.hi)));
        }
        return out;
    });

    py::class_<KClass>(m, "KClass")
        .def(py::init([](const std::vector<std::tuple<int, int, long long>>& summands) {
                 KClass f;
                 for (const auto& [d, chi, mult] : summands) f.add_summand(d, chi, mult);
                 return f;
             }),
             py::arg("summands"), "Summands are (twist d, character m, multiplicity).")
        .def_static("line_bundle", &KClass::line_bundle, py::arg("d"), py::arg("m") = 0);
    m.def("sheaf_character", &sheaf_character, py::arg("space"), py::arg("f"));
    m.def("atiyah_bott_index",
          [](const GmSpace& space, const KClass& f) { return index_dict(atiyah_bott_index(space, f)); });
    m.def("semistable_index", [](const GmSpace& space, const py::object& a, const KClass& f) {
        return index_dict(semistable_index(space, to_rational(a), f));
    });
    m.def("wall_crossing_delta",
          [](const GmSpace& space, const py::object& a1, const py::object& a2, const KClass& f) {
              const auto wc = wall_crossing_delta(space, to_rational(a1), to_rational(a2), f);
              py::dict out;
              out["delta"] = wc.delta;
              py::list walls;
              for (const auto& w : wc.walls) walls.append(py::make_tuple(w.component, w.delta));
              out["walls"] = walls;
              return out;
          });
    m.def("window_membership",
          [](const GmSpace& space, const KClass& f, const std::vector<py::object>& theta,
             const py::object& a) {
              WindowSpec spec;
              for (const auto& t : theta) spec.theta.push_back(to_rational(t));
              spec.a = to_rational(a);
              return membership_dict(window_membership(space, f, spec));
          });

    m.def(
        "quasi_symmetric",
        [](const py::object& weights, bool allow_zero) {
            const auto q = quasi_symmetric(rep_from_weights(weights, allow_zero));
            return py::make_tuple(q.ok, q.failing_line ? py::cast(*q.failing_line) : py::none());
        },
        py::arg("weights"), py::arg("allow_zero") = false);
    m.def(
        "window_lattice_points",
        [](const py::object& weights, const py::object& theta, bool allow_zero) {
            const auto win =
                window_lattice_points(rep_from_weights(weights, allow_zero), to_rational(theta));
            return win.lattice_points;
        },
        py::arg("weights"), py::arg("theta"), py::arg("allow_zero") = false);
    m.def(
        "unstable_koszul_class",
        [](const py::object& weights, int ell) {
            return unstable_koszul_class(rep_from_weights(weights, false), ell);
        },
        py::arg("weights"), py::arg("ell"));
    m.def(
        "window_basis_matrix",
        [](const py::object& weights, int ell, const py::object& theta) {
            return matrix_rows(window_basis_matrix(rep_from_weights(weights, false), ell,
                                                   to_rational(theta)));
        },
        py::arg("weights"), py::arg("ell"), py::arg("theta"));
    m.def(
        "monodromy_matrix",
        [](const py::object& weights, const py::object& theta0,
           const std::vector<std::pair<int, py::object>>& legs) {
            std::vector<PathLeg> path;
            for (const auto& [ell, theta] : legs) path.push_back({ell, to_rational(theta)});
            const auto mono =
                monodromy_matrix(rep_from_weights(weights, false), to_rational(theta0), path);
            py::dict out;
            out["matrix"] = matrix_rows(mono.matrix);
            out["det"] = big_int(mono.det);
            out["path"] = mono.path;
            return out;
        },
        py::arg("weights"), py::arg("theta0"), py::arg("legs"));

    m.def(
        "run_job",
        [](const std::string& text, const std::string& op) {
            const Report r = run(parse_input(text, op));
            py::dict machine;
            for (const auto& [k, v] : r.machine) machine[py::str(k)] = v;
            return py::make_tuple(machine, r.table);
        },
        py::arg("text"), py::arg("op") = "",
        "Parse and run a declarative job; returns (machine dict, table text).");
}
