#include "scs/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace scs::io {

namespace {

const char* band_name(OperatorMatrix::Band b) {
    return b == OperatorMatrix::Band::diagonal_in_j ? "diagonal_in_j" : "adjacent_j";
}

}  // namespace

std::string format_double(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw DomainError("complex value must be a [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const StateVector& s) {
    Json c = Json::array();
    for (Eigen::Index i = 0; i < s.c.size(); ++i) c.push_back(complex_to_json(s.c[i]));
    return Json{{"j_max", s.spec.j_max},
                {"dim", s.spec.dim()},
                {"tail_bound", s.tail_bound},
                {"truncation_warning", s.truncation_warning},
                {"coefficients", std::move(c)}};
}

StateVector state_from_json(const Json& j) {
    BasisSpec spec{j.at("j_max").get<int>()};
    spec.validate();
    const Json& c = j.at("coefficients");
    if (!c.is_array() || static_cast<int>(c.size()) != spec.dim()) {
        throw DomainError("state: coefficient count does not match (j_max+1)^2");
    }
    StateVector s{spec, Eigen::VectorXcd(spec.dim())};
    for (int i = 0; i < spec.dim(); ++i) s.c[i] = complex_from_json(c[i]);
    s.tail_bound = j.value("tail_bound", 0.0);
    s.truncation_warning = j.value("truncation_warning", false);
    return s;
}

Json to_json(const OperatorMatrix& m) {
    Json e = Json::array();
    for (Eigen::Index r = 0; r < m.entries.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.entries.cols(); ++c) e.push_back(complex_to_json(m.entries(r, c)));
    }
    return Json{{"op", to_string(m.op)},
                {"j_max", m.spec.j_max},
                {"dim", m.spec.dim()},
                {"band", band_name(m.band)},
                {"entries", std::move(e)}};
}

Json to_json(const QuadratureGrid& g) {
    return Json{{"coordinate", to_string(g.coordinate)}, {"nodes", g.nodes}, {"weights", g.weights}};
}

Json to_json(const ProductGrid& g) {
    return Json{{"norm", g.norm},
                {"phi", to_json(g.phi)},
                {"theta", to_json(g.theta)},
                {"alpha", to_json(g.alpha)},
                {"l", to_json(g.l)}};
}

Json to_json(const HusimiField& f) {
    Json point = nullptr;
    if (f.point) {
        point = Json{{"theta", f.point->theta}, {"phi", f.point->phi}, {"alpha", f.point->alpha}, {"l", f.point->l}};
    }
    return Json{{"z", Json::array({complex_to_json(f.z[0]), complex_to_json(f.z[1]), complex_to_json(f.z[2])})},
                {"point", point},
                {"n_theta", f.thetas.size()},
                {"n_phi", f.phis.size()},
                {"normalization", f.normalization},
                {"argmax",
                 {{"theta_index", f.argmax_theta},
                  {"phi_index", f.argmax_phi},
                  {"theta", f.thetas[f.argmax_theta]},
                  {"phi", f.phis[f.argmax_phi]}}},
                {"thetas", f.thetas},
                {"theta_weights", f.theta_weights},
                {"phis", f.phis},
                {"values", f.values}};
}

void write_csv(std::ostream& out, const HusimiField& f) {
    out << "# z: ";
    for (int i = 0; i < 3; ++i) {
        out << (i ? " " : "") << format_double(f.z[i].real()) << (std::signbit(f.z[i].imag()) ? "" : "+")
            << format_double(f.z[i].imag()) << "i";
    }
    out << "\n";
    if (f.point) {
        out << "# point: theta=" << format_double(f.point->theta) << " phi=" << format_double(f.point->phi)
            << " alpha=" << format_double(f.point->alpha) << " l=" << format_double(f.point->l) << "\n";
    }
    out << "# n_theta: " << f.thetas.size() << "\n";
    out << "# n_phi: " << f.phis.size() << "\n";
    out << "# normalization: " << format_double(f.normalization) << "\n";
    out << "# argmax: theta=" << format_double(f.thetas[f.argmax_theta])
        << " phi=" << format_double(f.phis[f.argmax_phi]) << "\n";
    out << "theta,phi,value\n";
    for (std::size_t it = 0; it < f.thetas.size(); ++it) {
        for (std::size_t ip = 0; ip < f.phis.size(); ++ip) {
            out << format_double(f.thetas[it]) << ',' << format_double(f.phis[ip]) << ','
                << format_double(f.value(it, ip)) << '\n';
        }
    }
}

}  // namespace scs::io
