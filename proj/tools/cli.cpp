#include "cli.hpp"

#include "gcm/corr.hpp"
#include "gcm/dataset.hpp"
#include "gcm/error.hpp"
#include "gcm/generator.hpp"
#include "gcm/json_io.hpp"
#include "gcm/mpole.hpp"
#include "gcm/parallel.hpp"
#include "gcm/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace gcm::cli {

namespace {

char parse_delimiter(const std::string& text) {
    if (text == "\\t" || text == "tab") return '\t';
    if (text.size() != 1 || text == "\"" || text == "\n" || text == "\r") {
        throw CLI::ValidationError("--delimiter", "must be a single character other than a quote or newline");
    }
    return text.front();
}

// Writes to `path`, or to `fallback` when the path is empty.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::IoError, "cannot write " + path);
    write(file);
    file.flush();
    if (!file) throw Error(ErrorCode::IoError, "write failed: " + path);
}

void emit_json(const std::string& path, std::ostream& fallback, const nlohmann::json& j) {
    emit(path, fallback, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

std::vector<std::size_t> resolve_columns(const Dataset& d, const std::vector<std::string>& names) {
    std::vector<std::size_t> idx;
    for (const auto& name : names) {
        const auto i = d.index_of(name);
        if (!i) throw Error(ErrorCode::InvalidSubset, "unknown column '" + name + "'");
        idx.push_back(*i);
    }
    return idx;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Correlation-preserving synthetic tabular data", "gcm"};
    app.require_subcommand(1);

    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker threads for internal parallel loops (0 = all cores)");

    std::string delimiter = ",";
    std::string input, out_path, format = "json";
    std::vector<std::string> columns;

    auto* stats = app.add_subcommand("stats", "Print per-column mean and sample std as JSON");
    stats->add_option("--input", input, "Source CSV")->required();
    stats->add_option("--out", out_path, "Output file (default stdout)");
    stats->add_option("--delimiter", delimiter, "CSV delimiter");

    auto* corr = app.add_subcommand("corr", "Write the Pearson correlation matrix");
    corr->add_option("--input", input, "Source CSV")->required();
    corr->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    corr->add_option("--out", out_path, "Output file (default stdout)");
    corr->add_option("--delimiter", delimiter, "CSV delimiter");

    auto* mp = app.add_subcommand("mpole", "Print the multipole correlation of a column subset");
    mp->add_option("--input", input, "Source CSV")->required();
    mp->add_option("--columns", columns, "Comma-separated column names (k >= 2)")
        ->required()
        ->delimiter(',');
    mp->add_option("--out", out_path, "Output file (default stdout)");
    mp->add_option("--delimiter", delimiter, "CSV delimiter");

    auto* fit_cmd = app.add_subcommand("fit", "Fit a blueprint (moments + correlation) to a dataset");
    fit_cmd->add_option("--input", input, "Source CSV")->required();
    fit_cmd->add_option("--out", out_path, "Blueprint JSON path")->required();
    fit_cmd->add_option("--delimiter", delimiter, "CSV delimiter");

    std::string blueprint_path, metadata_path, mode_text = "exact";
    std::size_t rows = 0;
    std::uint64_t seed = 0;
    auto* gen = app.add_subcommand("generate", "Generate a synthetic dataset");
    auto* gen_bp = gen->add_option("--blueprint", blueprint_path, "Blueprint JSON from `fit`");
    auto* gen_in = gen->add_option("--input", input, "Source CSV (fit inline)");
    gen_bp->excludes(gen_in);
    gen_in->excludes(gen_bp);
    gen->add_option("--rows", rows, "Synthetic row count")->required()->check(CLI::Range(std::size_t{2}, SIZE_MAX));
    gen->add_option("--seed", seed, "Noise seed");
    gen->add_option("--mode", mode_text, "exact or expected")->check(CLI::IsMember({"exact", "expected"}));
    gen->add_option("--out", out_path, "Synthetic CSV path")->required();
    gen->add_option("--metadata", metadata_path, "Metadata JSON path (default <out>.meta.json)");
    gen->add_option("--delimiter", delimiter, "CSV delimiter");

    std::string source_path, synthetic_path;
    VerifyOptions vopts;
    auto* ver = app.add_subcommand("verify", "Compare correlation structure of source and synthetic data");
    ver->add_option("--source", source_path, "Source CSV")->required();
    ver->add_option("--synthetic", synthetic_path, "Synthetic CSV")->required();
    ver->add_option("--max-order", vopts.k_max, "Highest subset order compared")->check(CLI::PositiveNumber);
    ver->add_option("--tolerance", vopts.tolerance, "Pass threshold")->check(CLI::PositiveNumber);
    ver->add_option("--subset-cap", vopts.subset_cap, "Max subsets per order")->check(CLI::PositiveNumber);
    ver->add_option("--seed", vopts.seed, "Subset sampling seed");
    ver->add_option("--metadata", metadata_path, "Metadata JSON from `generate` (for applied_jitter)");
    ver->add_option("--out", out_path, "Report path (default stdout)");
    ver->add_option("--delimiter", delimiter, "CSV delimiter");

    std::vector<const char*> argv{"gcm"};
    for (const auto& a : args) argv.push_back(a.c_str());
    char delim = ',';
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        delim = parse_delimiter(delimiter);
        if (gen->parsed() && blueprint_path.empty() && input.empty()) {
            throw CLI::RequiredError("generate needs --blueprint or --input");
        }
        if (mp->parsed() && columns.size() < 2) {
            throw CLI::ValidationError("--columns", "mpole needs k >= 2 columns, got " + std::to_string(columns.size()));
        }
        if (ver->parsed() && vopts.k_max < 2) {
            throw CLI::ValidationError("--max-order", "must be at least 2");
        }
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::Error& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        err << "gcm: " << msg << '\n';
        return kExitError;
    }

    set_thread_count(threads);

    try {
        if (stats->parsed()) {
            const Dataset d = load_csv(input, delim);
            emit_json(out_path, out, to_json(column_stats(d), d.names()));
        } else if (corr->parsed()) {
            const Dataset d = load_csv(input, delim);
            const CorrMatrix c = correlation_matrix(d);
            if (format == "csv") {
                emit(out_path, out, [&](std::ostream& os) { write_corr_csv(os, c, d.names(), delim); });
            } else {
                emit_json(out_path, out, to_json(c, d.names()));
            }
        } else if (mp->parsed()) {
            const Dataset d = load_csv(input, delim);
            const auto idx = resolve_columns(d, columns);
            emit_json(out_path, out, to_json(multipole(d, idx), d.names()));
        } else if (fit_cmd->parsed()) {
            save_json(to_json(fit(load_csv(input, delim))), out_path);
        } else if (gen->parsed()) {
            const Blueprint b = blueprint_path.empty() ? fit(load_csv(input, delim))
                                                       : blueprint_from_json(load_json(blueprint_path));
            GcmConfig cfg;
            cfg.rows = rows;
            cfg.seed = seed;
            cfg.mode = parse_mode(mode_text);
            const Synthetic s = generate(b, cfg);
            write_csv(s.data, out_path, delim);
            const nlohmann::json meta = {{"format_version", kFormatVersion},
                                         {"seed", seed},
                                         {"mode", std::string(to_string(cfg.mode))},
                                         {"rows", rows},
                                         {"applied_jitter", s.applied_jitter}};
            save_json(meta, metadata_path.empty() ? out_path + ".meta.json" : metadata_path);
        } else if (ver->parsed()) {
            const Dataset source = load_csv(source_path, delim);
            const Dataset synthetic = load_csv(synthetic_path, delim);
            if (!metadata_path.empty()) {
                const auto meta = load_json(metadata_path);
                if (!meta.contains("applied_jitter") || !meta["applied_jitter"].is_number()) {
                    throw Error(ErrorCode::FormatError, metadata_path + ": missing numeric 'applied_jitter'");
                }
                vopts.applied_jitter = meta["applied_jitter"].get<double>();
            }
            const VerificationReport report = verify(source, synthetic, vopts);
            emit_json(out_path, out, to_json(report));
            return report.pass ? kExitOk : kExitVerifyFailed;
        }
    } catch (const Error& e) {
        err << "gcm: " << to_string(e.code()) << ": " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        err << "gcm: " << e.what() << '\n';
        return kExitError;
    }
    return kExitOk;
}

}  // namespace gcm::cli
