#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include <complex>

#include <rootclust/benchmarks.hpp>
#include <rootclust/cli.hpp>
#include <rootclust/counting.hpp>
#include <rootclust/deflation.hpp>

namespace py = pybind11;
using namespace rootclust;

namespace {

struct PyCluster {
    std::string center_re, center_im, radius;
    int multiplicity;
    double center_re_f, center_im_f, radius_f;
};

struct PyResult {
    std::vector<PyCluster> clusters;
    int degree;
    py::dict stats;
};

cli::PolySource source_from(const py::object& poly) {
    if (py::isinstance<py::str>(poly)) return cli::load_polynomial(poly.cast<std::string>());
    // list of (re, im) strings, ascending degree
    cli::PolySource src;
    for (const auto& item : poly.cast<py::sequence>()) {
        auto pair = item.cast<py::sequence>();
        src.rational.coeffs.emplace_back(
            cli::parse_rational(pair[0].cast<std::string>()),
            cli::parse_rational(pair[1].cast<std::string>()));
    }
    if (src.rational.coeffs.empty()) throw std::invalid_argument("empty polynomial");
    src.real = src.rational.is_real();
    src.oracle = std::make_unique<RationalOracle>(src.rational);
    src.description = "coefficients";
    return src;
}

PyResult solve_impl(const py::object& poly,
                    const std::tuple<double, double, double, double>& roi_in,
                    const std::string& eps, const std::string& mode, const py::object& n_in,
                    const std::string& real_symmetry) {
    cli::PolySource src = source_from(poly);
    auto [xmin, xmax, ymin, ymax] = roi_in;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g", xmin, xmax, ymin, ymax);
    Box roi = cli::parse_roi(buf);
    mpq_class eps_q = cli::parse_eps(eps);

    long n = std::max(1L, static_cast<long>(src.oracle->degree() / 8));
    if (!n_in.is_none()) n = n_in.cast<long>();

    SolveOptions opt;
    if (real_symmetry == "on") {
        if (!src.real) throw std::invalid_argument("real_symmetry needs real coefficients");
        opt.real_symmetry = true;
    } else if (real_symmetry == "auto") {
        opt.real_symmetry = src.real && roi.cim == 0;
    }

    SolveStats stats;
    ClusterSet cs;
    if (mode == "deflate")
        cs = cluster_with_deflation(*src.oracle, roi, eps_q, n, opt, &stats);
    else if (mode == "plain")
        cs = solve_lcp(*src.oracle, roi, eps_q, opt, &stats);
    else
        throw std::invalid_argument("mode must be 'plain' or 'deflate'");

    PyResult out;
    out.degree = src.oracle->degree();
    for (const Cluster& c : cs) {
        PyCluster pc;
        pc.center_re = BigFloat::from_q(c.disc.cre, 256).to_decimal(30);
        pc.center_im = BigFloat::from_q(c.disc.cim, 256).to_decimal(30);
        pc.radius = BigFloat::from_q(c.disc.radius, 64, MPFR_RNDU).to_decimal(8);
        pc.multiplicity = c.multiplicity;
        pc.center_re_f = c.disc.cre.get_d();
        pc.center_im_f = c.disc.cim.get_d();
        pc.radius_f = c.disc.radius.get_d();
        out.clusters.push_back(std::move(pc));
    }
    out.stats["depth"] = stats.max_depth;
    out.stats["size"] = stats.boxes_processed;
    out.stats["maxprec"] = stats.max_refine_prec;
    out.stats["counting_calls"] = stats.counting_calls;
    out.stats["degree_weighted_cost"] = stats.degree_weighted_cost;
    out.stats["t_total"] = stats.t_total;
    return out;
}

py::list family_coeffs(const RationalPolynomial& p) {
    py::list out;
    for (const auto& [re, im] : p.coeffs) {
        py::tuple t(2);
        t[0] = re.get_str();
        t[1] = im.get_str();
        out.append(t);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_rootclust, m) {
    m.doc() = "complex root clustering by subdivision, counting tests and deflation";

    py::class_<PyCluster>(m, "Cluster")
        .def_readonly("center_re", &PyCluster::center_re)
        .def_readonly("center_im", &PyCluster::center_im)
        .def_readonly("radius", &PyCluster::radius)
        .def_readonly("multiplicity", &PyCluster::multiplicity)
        .def_property_readonly("center",
                               [](const PyCluster& c) {
                                   return std::complex<double>(c.center_re_f, c.center_im_f);
                               })
        .def_property_readonly("radius_float",
                               [](const PyCluster& c) { return c.radius_f; })
        .def("__repr__", [](const PyCluster& c) {
            return "Cluster(center=(" + c.center_re + ", " + c.center_im + "), radius=" +
                   c.radius + ", multiplicity=" + std::to_string(c.multiplicity) + ")";
        });

    py::class_<PyResult>(m, "Result")
        .def_readonly("clusters", &PyResult::clusters)
        .def_readonly("degree", &PyResult::degree)
        .def_readonly("stats", &PyResult::stats)
        .def("__len__", [](const PyResult& r) { return r.clusters.size(); })
        .def("__repr__", [](const PyResult& r) {
            return "Result(" + std::to_string(r.clusters.size()) + " clusters, degree " +
                   std::to_string(r.degree) + ")";
        });

    m.def("solve", &solve_impl, py::arg("poly"), py::arg("roi"), py::arg("eps") = "2^-53",
          py::arg("mode") = "plain", py::arg("n") = py::none(),
          py::arg("real_symmetry") = "auto",
          "Cluster the roots of a polynomial inside a square region.\n\n"
          "poly: 'builtin:<family>:<d>[:<a>]', a polynomial file path, or a\n"
          "      list of (re, im) coefficient strings in ascending degree.\n"
          "roi:  (xmin, xmax, ymin, ymax), must be square.\n"
          "mode: 'plain' subdivision or 'deflate' for the lower-degree\n"
          "      continuation via power sums.");

    m.def("count_in_disc",
          [](const py::object& poly, const std::string& cre, const std::string& cim,
             const std::string& radius) {
              cli::PolySource src = source_from(poly);
              Disc d(cli::parse_rational(cre), cli::parse_rational(cim),
                     cli::parse_eps(radius));
              return confirm_disc(*src.oracle, d, kDefaultL0, kDefaultLmax).value;
          },
          py::arg("poly"), py::arg("center_re"), py::arg("center_im"), py::arg("radius"),
          "Certified number of roots in the disc (count on the disc equals\n"
          "the count on its 3x inflation), or -1 if undecided.");

    m.def("bernoulli", [](int d) { return family_coeffs(bernoulli(d)); }, py::arg("d"));
    m.def("mignotte", [](int d, int a) { return family_coeffs(mignotte(d, a)); },
          py::arg("d"), py::arg("a"));
    m.def("mandelbrot", [](int d) { return family_coeffs(mandelbrot(d)); }, py::arg("d"));

    m.attr("__version__") = "0.1.0";
}
