#include "hybridcat/cli/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

namespace hybridcat::cli {

namespace {

struct Row {
    std::string variant, model, resource, alpha, r, eta, outcome;
    double probability = 0.0, fidelity = 0.0;
    std::optional<double> negativity;
    std::optional<double> fidelity_exact;
};

std::string csv_line(std::string_view protocol, const Row& row) {
    std::string out(protocol);
    for (const auto* field : {&row.variant, &row.model, &row.resource, &row.alpha, &row.r, &row.eta, &row.outcome})
        out += "," + *field;
    out += "," + format_real(row.probability) + "," + format_real(row.fidelity);
    out += "," + (row.negativity ? format_real(*row.negativity) : std::string());
    out += "," + (row.fidelity_exact ? format_real(*row.fidelity_exact) : std::string());
    return out + "\n";
}

bool uses_r(const ExperimentConfig& c) {
    return c.protocol == Protocol::Generate || (c.protocol != Protocol::Wigner && c.resource == ResourceQuality::Kind::Generated);
}

std::string file_tag(double value) {
    std::string s = format_real(value);
    for (auto& ch : s)
        if (ch == '+') ch = 'p';
    return s;
}

std::size_t square(std::size_t x) { return x * x; }

GridSpec grid_for(const ExperimentConfig& c, double alpha) {
    return GridSpec::default_for(alpha, c.wigner_grid.value_or(201));
}

DensityMatrix single_mode(const ConditionalState& state, const ModeLabel& mode) {
    const ModeLabel keep[] = {mode};
    if (const auto* pure = std::get_if<StateVector>(&state)) return reduced_density(*pure, keep);
    return partial_trace(std::get<DensityMatrix>(state), keep);
}

json matrix_to_json(const Eigen::Matrix4cd& m) {
    json rows = json::array();
    for (int i = 0; i < 4; ++i) {
        json row = json::array();
        for (int k = 0; k < 4; ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

json conditional_to_json(const ConditionalState& state, double alpha) {
    if (const auto* pure = std::get_if<StateVector>(&state)) return to_json(*pure);
    if (const auto* mixed = std::get_if<DensityMatrix>(&state)) {
        // Full mixed states are too large for a report; keep the hybrid-basis block.
        const auto q = hybrid_qubit_density(*mixed, "a", "c", alpha);
        return {{"modes", space_to_json(mixed->space())},
                {"hybrid_qubit_density", {{"matrix", matrix_to_json(q.matrix)}, {"leakage", q.leakage}}}};
    }
    return nullptr;
}

json config_to_json(const ExperimentConfig& c) {
    auto sweep = [](const Sweep& s) { return json{{"start", s.start}, {"stop", s.stop}, {"steps", s.steps}}; };
    return {{"protocol", std::string(to_string(c.protocol))},
            {"alpha", sweep(c.alpha)},
            {"r", sweep(c.r)},
            {"eta", c.eta},
            {"variant", c.variant},
            {"model", std::string(to_string(c.model))},
            {"ch", c.ch},
            {"cv", c.cv},
            {"resource", c.resource == ResourceQuality::Kind::Ideal ? "ideal" : "generated"},
            {"seed", c.seed},
            {"cutoff", c.cutoff ? json(*c.cutoff) : json(nullptr)},
            {"wigner_grid", c.wigner_grid ? json(*c.wigner_grid) : json(nullptr)},
            {"max_dim", c.max_dim}};
}

std::size_t sample(std::span<const double> probabilities, std::mt19937_64& rng) {
    std::vector<HeraldedResult> results;
    for (double p : probabilities) results.push_back({"", p, {}});
    return sample_outcome(results, rng);
}

class Runner {
public:
    explicit Runner(const ExperimentConfig& c) : c_(c), rng_(c.seed) {}

    ExperimentOutput run() {
        out_.results_csv = std::string(kResultsHeader) + "\n";
        json points = json::array();
        const std::vector<double> rs = uses_r(c_) ? c_.r.values() : std::vector<double>{c_.r.start};
        for (double alpha : c_.alpha.values()) {
            if (c_.protocol == Protocol::Wigner) {
                points.push_back(wigner_point(alpha));
                continue;
            }
            for (double r : rs) {
                switch (c_.protocol) {
                    case Protocol::Generate: points.push_back(generate_point(alpha, r)); break;
                    case Protocol::SwapDv:
                    case Protocol::SwapCv: points.push_back(swap_point(alpha, r)); break;
                    case Protocol::Teleport: points.push_back(teleport_point(alpha, r)); break;
                    case Protocol::Wigner: break;
                }
            }
        }
        out_.report = {{"config", config_to_json(c_)}, {"points", std::move(points)}};
        return std::move(out_);
    }

private:
    void add_row(const Row& row) { out_.results_csv += csv_line(to_string(c_.protocol), row); }

    void add_wigner(const std::string& name, const DensityMatrix& rho, double alpha) {
        out_.wigner_files.emplace_back(name, wigner_csv(wigner(rho, grid_for(c_, alpha))));
    }

    ResourceQuality resource(double r) const {
        return c_.resource == ResourceQuality::Kind::Ideal ? ResourceQuality::ideal() : ResourceQuality::generated(r);
    }

    json generate_point(double alpha, double r) {
        GenerationOptions options;
        options.cutoff = c_.cutoff;
        const auto rep = generate_hybrid(alpha, r, c_.variant, c_.model, c_.eta, options);
        const HeraldCalibration cal = calibration_for(c_.variant);
        const std::string outcome =
            c_.model == BsmModel::ProjectorBSM ? std::string(to_string(cal.outcome)) : std::string(to_string(Coincidence::C13));
        add_row({std::to_string(c_.variant), std::string(to_string(c_.model)), "", format_real(alpha), format_real(r),
                 format_real(c_.eta), outcome, rep.herald_probability, rep.fidelity_vs_target, rep.negativity,
                 rep.fidelity_vs_exact_ladder});

        const double p[] = {rep.herald_probability, 1.0 - rep.herald_probability};
        json point = {{"alpha", alpha},
                      {"r", r},
                      {"eta", c_.eta},
                      {"variant", rep.variant},
                      {"model", std::string(to_string(rep.model))},
                      {"cutoff", rep.cutoff},
                      {"herald_outcome", outcome},
                      {"herald_probability", rep.herald_probability},
                      {"fidelity_vs_target", rep.fidelity_vs_target},
                      {"fidelity_vs_exact_ladder", rep.fidelity_vs_exact_ladder},
                      {"gamma_plus", rep.gamma_plus},
                      {"gamma_minus", rep.gamma_minus},
                      {"negativity", rep.negativity},
                      {"sampled_herald", sample(p, rng_) == 0},
                      {"conditional_state", conditional_to_json(rep.conditional_state, alpha)}};
        if (c_.wigner_grid && !std::holds_alternative<std::monostate>(rep.conditional_state)) {
            const std::string stem = "wigner_generate_alpha" + file_tag(alpha) + "_r" + file_tag(r);
            add_wigner(stem + "_cH.csv", single_mode(rep.conditional_state, {"c", Polarization::H}), alpha);
            add_wigner(stem + "_cV.csv", single_mode(rep.conditional_state, {"c", Polarization::V}), alpha);
        }
        return point;
    }

    json swap_point(double alpha, double r) {
        const auto quality = resource(r);
        const auto rep = c_.protocol == Protocol::SwapDv ? swap_dv_dvbsm_cv(alpha, quality, c_.cutoff)
                                                         : swap_cv_dvbsm_cv(alpha, quality, c_.cutoff, c_.max_dim);
        const bool generated = quality.kind == ResourceQuality::Kind::Generated;
        json outcomes = json::array();
        std::vector<double> probabilities;
        for (const auto& o : rep.outcomes) {
            add_row({"", "", generated ? "generated" : "ideal", format_real(alpha), generated ? format_real(r) : "", "",
                     std::string(to_string(o.outcome)), o.probability, o.fidelity, o.negativity, std::nullopt});
            outcomes.push_back({{"outcome", std::string(to_string(o.outcome))},
                                {"probability", o.probability},
                                {"fidelity", o.fidelity},
                                {"negativity", o.negativity}});
            probabilities.push_back(o.probability);
        }
        probabilities.push_back(rep.complement_probability);
        const auto drawn = sample(probabilities, rng_);
        return {{"scheme", rep.scheme},
                {"alpha", alpha},
                {"resource", to_string(quality)},
                {"cutoff", rep.cutoff},
                {"total_dim", rep.total_dim},
                {"outcomes", std::move(outcomes)},
                {"complement_probability", rep.complement_probability},
                {"sampled_outcome", drawn < rep.outcomes.size() ? std::string(to_string(rep.outcomes[drawn].outcome))
                                                                : std::string("none")}};
    }

    json teleport_point(double alpha, double r) {
        const auto quality = resource(r);
        const auto rep = teleport(c_.ch, c_.cv, alpha, quality, c_.cutoff);
        const bool generated = quality.kind == ResourceQuality::Kind::Generated;
        json probs = json::object(), fids = json::object();
        std::vector<double> probabilities;
        for (auto o : kBellOutcomes) {
            const std::string name(to_string(o));
            const double p = rep.outcome_probabilities.at(o);
            const double f = rep.corrected_fidelities.at(o);
            add_row({"", "", generated ? "generated" : "ideal", format_real(alpha), generated ? format_real(r) : "", "",
                     name, p, f, std::nullopt, std::nullopt});
            probs[name] = p;
            fids[name] = f;
            probabilities.push_back(p);
            if (c_.wigner_grid) {
                const auto& bob = rep.corrected_states.at(o);
                const std::string stem = "wigner_teleport_alpha" + file_tag(alpha) + "_" + name;
                const ModeLabel bh[] = {{"B", Polarization::H}};
                const ModeLabel bv[] = {{"B", Polarization::V}};
                if (bob.squared_norm() > 0.0) {
                    add_wigner(stem + "_BH.csv", reduced_density(bob, bh), alpha);
                    add_wigner(stem + "_BV.csv", reduced_density(bob, bv), alpha);
                }
            }
        }
        probabilities.push_back(rep.complement_probability);
        const auto drawn = sample(probabilities, rng_);
        return {{"input", {{"ch", c_.ch}, {"cv", c_.cv}}},
                {"alpha", alpha},
                {"resource", to_string(quality)},
                {"cutoff", rep.cutoff},
                {"outcome_probabilities", std::move(probs)},
                {"corrected_fidelities", std::move(fids)},
                {"complement_probability", rep.complement_probability},
                {"sampled_outcome",
                 drawn < kBellOutcomes.size() ? std::string(to_string(kBellOutcomes[drawn])) : std::string("none")}};
    }

    json wigner_point(double alpha) {
        const int k = resolved_cutoff(c_, alpha);
        const HilbertSpace space = build_space({{"c", Polarization::H, k}});
        const ModeLabel mode{"c", Polarization::H};
        json states = json::array();
        for (auto parity : {CatParity::Plus, CatParity::Minus}) {
            const StateVector cat = cat_state(space, mode, alpha, parity);
            DensityMatrix rho = DensityMatrix::from_pure(cat);
            if (c_.eta < 1.0) rho = loss_channel(rho, mode, c_.eta);
            const WignerGrid grid = wigner(rho, grid_for(c_, alpha));
            const std::string label = parity == CatParity::Plus ? "CatPlus" : "CatMinus";
            const std::string file = "wigner_alpha" + file_tag(alpha) + "_eta" + file_tag(c_.eta) + "_" + label + ".csv";
            const double f = fidelity(cat, rho);
            const double nv = wigner_negative_volume(grid);
            add_row({"", "", "", format_real(alpha), "", format_real(c_.eta), label, 1.0, f, nv, std::nullopt});
            states.push_back({{"label", label},
                              {"fidelity", f},
                              {"negative_volume", nv},
                              {"integral", wigner_integral(grid)},
                              {"parity", parity_expectation(rho, mode)},
                              {"grid_file", file}});
            out_.wigner_files.emplace_back(file, wigner_csv(grid));
        }
        return {{"alpha", alpha}, {"eta", c_.eta}, {"cutoff", k}, {"states", std::move(states)}};
    }

    const ExperimentConfig& c_;
    std::mt19937_64 rng_;
    ExperimentOutput out_;
};

}  // namespace

int resolved_cutoff(const ExperimentConfig& config, double alpha) {
    return config.cutoff.value_or(default_cv_cutoff(std::abs(alpha)));
}

std::size_t peak_dimension(const ExperimentConfig& c, double alpha) {
    const auto cv = static_cast<std::size_t>(resolved_cutoff(c, alpha)) + 1;
    const std::size_t generation = 4 * 9 * square(cv) * 9;  // a, b, c, d
    const bool generated = c.resource == ResourceQuality::Kind::Generated;
    switch (c.protocol) {
        case Protocol::Generate: return generation;
        case Protocol::SwapDv: return std::max(64 * square(cv), generated ? generation : 0);
        case Protocol::SwapCv: return std::max(swap_cv_dimension(static_cast<int>(cv) - 1), generated ? generation : 0);
        case Protocol::Teleport: return std::max(16 * square(cv), generated ? generation : 0);
        case Protocol::Wigner: return square(cv);
    }
    return 0;
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
    validate_config(config);
    return Runner(config).run();
}

void write_outputs(const ExperimentOutput& output, const std::string& dir) {
    std::filesystem::create_directories(dir);
    auto write = [&](const std::string& name, const std::string& contents) {
        std::ofstream f(std::filesystem::path(dir) / name, std::ios::binary);
        if (!f) throw Error("cannot write " + (std::filesystem::path(dir) / name).string());
        f << contents;
    };
    write("results.csv", output.results_csv);
    write("report.json", output.report.dump(2) + "\n");
    for (const auto& [name, contents] : output.wigner_files) write(name, contents);
}

std::string describe(const ExperimentConfig& c) {
    validate_config(c);
    std::string out = "protocol: " + std::string(to_string(c.protocol)) + "\n";
    for (double alpha : c.alpha.values()) {
        const int k = resolved_cutoff(c, alpha);
        const double tail = coherent_tail_weight(alpha, k);
        if (tail > kTruncationTolerance)
            throw CutoffTooSmall("cutoff " + std::to_string(k) + " at alpha = " + format_real(alpha) +
                                 " drops coherent weight " + format_real(tail) + " (needs <= " +
                                 format_real(kTruncationTolerance) + "; default cutoff " +
                                 std::to_string(default_cv_cutoff(alpha)) + ")");
        const std::size_t dim = peak_dimension(c, alpha);
        const double mib = static_cast<double>(dim) * sizeof(Complex) / (1024.0 * 1024.0);
        out += "alpha " + format_real(alpha) + ": cv cutoff " + std::to_string(k) + " (tail " + format_real(tail) +
               "), peak state dimension " + std::to_string(dim) + " (" + format_real(mib) + " MiB per state vector)\n";
        if (c.protocol == Protocol::SwapCv && swap_cv_dimension(k) > c.max_dim)
            out += "WARNING: swap-cv dimension " + std::to_string(swap_cv_dimension(k)) + " exceeds the memory guard " +
                   std::to_string(c.max_dim) + "; run would stop with exit code 3\n";
    }
    return out;
}

}  // namespace hybridcat::cli
