#include "hybridcat/cli/serialize.hpp"

#include <cstdio>

namespace hybridcat::cli {

std::string format_real(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

json space_to_json(const HilbertSpace& space) {
    json modes = json::array();
    for (const auto& m : space.modes())
        modes.push_back({{"spatial", m.spatial}, {"polarization", to_string(m.polarization)}, {"cutoff", m.cutoff}});
    return modes;
}

HilbertSpace space_from_json(const json& j) {
    std::vector<ModeDescriptor> modes;
    for (const auto& m : j) {
        const auto pol = m.at("polarization").get<std::string>();
        if (pol != "H" && pol != "V") throw Error("unknown polarization '" + pol + "'");
        modes.push_back({m.at("spatial").get<std::string>(), pol == "H" ? Polarization::H : Polarization::V,
                         m.at("cutoff").get<int>()});
    }
    return build_space(std::move(modes));
}

json to_json(const StateVector& state) {
    json amps = json::array();
    for (std::size_t i = 0; i < state.dim(); ++i) amps.push_back({state[i].real(), state[i].imag()});
    return {{"modes", space_to_json(state.space())}, {"amplitudes", std::move(amps)}};
}

json to_json(const DensityMatrix& rho) {
    json rows = json::array();
    const auto& m = rho.elements();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
        rows.push_back(std::move(row));
    }
    return {{"modes", space_to_json(rho.space())}, {"elements", std::move(rows)}};
}

json to_json(const SparseOperator& op) {
    json entries = json::array();
    const auto& m = op.entries();
    for (Eigen::Index row = 0; row < m.outerSize(); ++row)
        for (SparseMatrix::InnerIterator it(m, row); it; ++it)
            entries.push_back({it.row(), it.col(), it.value().real(), it.value().imag()});
    return {{"modes", space_to_json(op.space())}, {"entries", std::move(entries)}};
}

StateVector state_from_json(const json& j) {
    HilbertSpace space = space_from_json(j.at("modes"));
    const auto& amps = j.at("amplitudes");
    if (amps.size() != space.total_dim()) throw SpaceMismatch("amplitude count does not match the space");
    Vector v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = Complex(amps[i].at(0).get<double>(), amps[i].at(1).get<double>());
    return {std::move(space), std::move(v)};
}

DensityMatrix density_from_json(const json& j) {
    HilbertSpace space = space_from_json(j.at("modes"));
    const auto& rows = j.at("elements");
    const auto d = static_cast<Eigen::Index>(space.total_dim());
    if (static_cast<Eigen::Index>(rows.size()) != d) throw SpaceMismatch("row count does not match the space");
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(row.size()) != d) throw SpaceMismatch("column count does not match the space");
        for (Eigen::Index k = 0; k < d; ++k) {
            const auto& e = row[static_cast<std::size_t>(k)];
            m(i, k) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return {std::move(space), std::move(m)};
}

SparseOperator operator_from_json(const json& j) {
    HilbertSpace space = space_from_json(j.at("modes"));
    const auto d = static_cast<Eigen::Index>(space.total_dim());
    std::vector<Eigen::Triplet<Complex>> triplets;
    for (const auto& e : j.at("entries")) {
        const auto row = e.at(0).get<Eigen::Index>();
        const auto col = e.at(1).get<Eigen::Index>();
        if (row < 0 || col < 0 || row >= d || col >= d) throw SpaceMismatch("operator entry outside the space");
        triplets.emplace_back(row, col, Complex(e.at(2).get<double>(), e.at(3).get<double>()));
    }
    SparseMatrix m(d, d);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return {std::move(space), std::move(m)};
}

std::string wigner_csv(const WignerGrid& grid) {
    std::string out = "p\\x";
    for (double x : grid.x_axis) out += "," + format_real(x);
    out += "\n";
    for (std::size_t i = 0; i < grid.p_axis.size(); ++i) {
        out += format_real(grid.p_axis[i]);
        for (std::size_t k = 0; k < grid.x_axis.size(); ++k)
            out += "," + format_real(grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
        out += "\n";
    }
    return out;
}

}  // namespace hybridcat::cli
