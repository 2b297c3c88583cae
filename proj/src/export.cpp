#include "driftbench/export.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "driftbench/errors.hpp"

namespace driftbench {

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const auto parent = path.parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed for '" + tmp + "'");
    }
    std::filesystem::rename(tmp, path);
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

namespace {

std::string format_full(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_pct(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
    return buf;
}

}  // namespace

std::string render_pattern_csv(const Scenario& scenario, std::uint64_t seed) {
    std::ostringstream out;
    out << "t";
    for (int f = 1; f <= scenario.dimension(); ++f) out << ",x" << f;
    out << ",class,component\n";
    StreamGenerator stream(scenario, seed);
    while (auto p = stream.next()) {
        out << p->t;
        for (Eigen::Index f = 0; f < p->x.size(); ++f) out << ',' << format_value(p->x[f]);
        out << ',' << scenario.class_name(p->class_index) << ','
            << p->component.class_index << ':' << p->component.component_index << '\n';
    }
    return out.str();
}

std::string render_pattern_arff(const Scenario& scenario, std::uint64_t seed) {
    std::ostringstream out;
    out << "@RELATION " << scenario.name() << "\n\n";
    for (int f = 1; f <= scenario.dimension(); ++f) {
        out << "@ATTRIBUTE x" << f << " NUMERIC\n";
    }
    out << "@ATTRIBUTE class {";
    for (int c = 0; c < scenario.class_count(); ++c) {
        if (c > 0) out << ',';
        out << scenario.class_name(c);
    }
    out << "}\n\n@DATA\n";
    StreamGenerator stream(scenario, seed);
    while (auto p = stream.next()) {
        for (Eigen::Index f = 0; f < p->x.size(); ++f) out << format_value(p->x[f]) << ',';
        out << scenario.class_name(p->class_index) << '\n';
    }
    return out.str();
}

std::string render_trace_csv(const RunTrace& trace, long window) {
    std::ostringstream out;
    out << "n,loss,ae_cum,ae_win\n";
    for (const auto& p : metric_series(trace, window)) {
        out << p.n << ',' << p.loss << ',' << format_value(p.ae_cum) << ',';
        if (p.ae_win_valid) out << format_value(p.ae_win);
        out << '\n';
    }
    return out.str();
}

std::string render_curves_csv(const ExperimentResult& result, const std::string& scenario) {
    std::ostringstream out;
    out << "n";
    std::vector<const CellResult*> cells;
    for (const auto& cfg : result.learners) {
        out << ',' << cfg.id;
        cells.push_back(result.find(scenario, cfg.id));
    }
    out << '\n';
    size_t rows = 0;
    for (const auto* cell : cells) {
        if (cell) rows = std::max(rows, cell->mean_ae_win.size());
    }
    for (size_t i = 0; i < rows; ++i) {
        out << (result.window + static_cast<long>(i));
        for (const auto* cell : cells) {
            out << ',';
            if (cell && i < cell->mean_ae_win.size()) out << format_value(cell->mean_ae_win[i]);
        }
        out << '\n';
    }
    return out.str();
}

std::string render_results_csv(const ExperimentResult& result, bool with_group_flags) {
    std::ostringstream out;
    out << "scenario";
    for (const auto& cfg : result.learners) out << ',' << cfg.id;
    out << '\n';
    for (const auto& scenario : result.scenario_names) {
        out << scenario;
        for (const auto& cfg : result.learners) {
            out << ',';
            const CellResult* cell = result.find(scenario, cfg.id);
            if (cell && !cell->seed_finals.empty()) {
                out << format_pct(cell->mean_final);
                if (with_group_flags && cell->in_best_group) out << '*';
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string render_finals_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << "scenario,learner,seed,final_ae\n";
    for (const auto& cell : result.cells) {
        for (size_t s = 0; s < cell.seed_finals.size(); ++s) {
            out << cell.scenario << ',' << cell.learner << ',' << (s + 1) << ','
                << format_full(cell.seed_finals[s]) << '\n';
        }
    }
    return out.str();
}

ExperimentResult load_finals_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line) || line != "scenario,learner,seed,final_ae") {
        throw std::runtime_error("'" + path.string() + "' is not a finals table");
    }
    ExperimentResult result;
    auto cell_of = [&](const std::string& scenario, const std::string& learner) -> CellResult& {
        if (auto* existing = result.find(scenario, learner)) return *existing;
        if (std::find(result.scenario_names.begin(), result.scenario_names.end(), scenario) ==
            result.scenario_names.end()) {
            result.scenario_names.push_back(scenario);
        }
        bool known = false;
        for (const auto& cfg : result.learners) known |= cfg.id == learner;
        if (!known) {
            LearnerConfig cfg;
            cfg.id = learner;
            cfg.kind = learner == "opt" ? "bayes_optimal" : "";
            result.learners.push_back(cfg);
        }
        CellResult cell;
        cell.scenario = scenario;
        cell.learner = learner;
        result.cells.push_back(std::move(cell));
        return result.cells.back();
    };
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string scenario, learner, seed, value;
        if (!std::getline(row, scenario, ',') || !std::getline(row, learner, ',') ||
            !std::getline(row, seed, ',') || !std::getline(row, value)) {
            throw std::runtime_error("'" + path.string() + "': malformed line " +
                                     std::to_string(lineno));
        }
        cell_of(scenario, learner).seed_finals.push_back(std::stod(value));
    }
    int seeds = 0;
    for (auto& cell : result.cells) {
        double sum = 0.0;
        for (double v : cell.seed_finals) sum += v;
        if (!cell.seed_finals.empty()) {
            cell.mean_final = sum / static_cast<double>(cell.seed_finals.size());
        }
        seeds = std::max(seeds, static_cast<int>(cell.seed_finals.size()));
    }
    result.seeds = seeds;
    return result;
}

std::string render_groups_csv(const std::vector<SignificanceGroup>& groups) {
    std::ostringstream out;
    out << "scenario,best,members\n";
    for (const auto& g : groups) {
        out << g.scenario << ',' << g.best << ',';
        for (size_t i = 0; i < g.members.size(); ++i) {
            if (i > 0) out << ';';
            out << g.members[i];
        }
        out << '\n';
    }
    return out.str();
}

std::string render_pvalues_csv(const ExperimentResult& result, bool paired) {
    std::ostringstream out;
    out << "scenario,learner_a,learner_b,p_value\n";
    for (const auto& scenario : result.scenario_names) {
        for (const auto& p : pairwise_pvalues(result, scenario, paired)) {
            out << scenario << ',' << p.learner_a << ',' << p.learner_b << ','
                << format_full(p.p_value) << '\n';
        }
    }
    return out.str();
}

std::string render_report_text(const ExperimentResult& result,
                               const std::vector<SignificanceGroup>& groups) {
    std::ostringstream out;
    out << "Final prequential error (%), mean over " << result.seeds
        << (result.seeds == 1 ? " seed" : " seeds")
        << "; * marks learners statistically tied with the best\n\n";
    size_t name_width = 8;
    for (const auto& s : result.scenario_names) name_width = std::max(name_width, s.size());
    out << std::left << std::setw(static_cast<int>(name_width) + 2) << "scenario";
    for (const auto& cfg : result.learners) {
        out << std::right << std::setw(9) << cfg.id;
    }
    out << '\n';
    for (const auto& scenario : result.scenario_names) {
        out << std::left << std::setw(static_cast<int>(name_width) + 2) << scenario;
        for (const auto& cfg : result.learners) {
            const CellResult* cell = result.find(scenario, cfg.id);
            std::string value = "-";
            if (cell && !cell->seed_finals.empty()) {
                value = format_pct(cell->mean_final);
                if (cell->in_best_group) value += '*';
            }
            out << std::right << std::setw(9) << value;
        }
        out << '\n';
    }
    if (!groups.empty()) {
        out << '\n';
        for (const auto& g : groups) {
            out << g.scenario << ": best " << g.best << ", tied {";
            for (size_t i = 0; i < g.members.size(); ++i) {
                if (i > 0) out << ", ";
                out << g.members[i];
            }
            out << "}\n";
        }
    }
    return out.str();
}

}  // namespace driftbench
