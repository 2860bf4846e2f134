#include "gcm/json_io.hpp"

#include "gcm/error.hpp"

#include <fstream>
#include <ostream>

namespace gcm {

using nlohmann::json;

namespace {

json matrix_rows(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto row = m.row(r);
        rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    return rows;
}

template <typename T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw Error(ErrorCode::FormatError, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::FormatError, std::string("bad field '") + key + "': " + e.what());
    }
}

}  // namespace

json to_json(const ColumnStats& stats, const std::vector<std::string>& names) {
    return {{"format_version", kFormatVersion},
            {"names", names},
            {"means", stats.means},
            {"stds", stats.stds}};
}

json to_json(const CorrMatrix& c, const std::vector<std::string>& names) {
    return {{"format_version", kFormatVersion}, {"names", names}, {"entries", matrix_rows(c.matrix())}};
}

json to_json(const MultipoleResult& r, const std::vector<std::string>& names) {
    std::vector<std::string> subset;
    for (std::size_t i : r.subset) subset.push_back(names.at(i));
    return {{"format_version", kFormatVersion},
            {"subset", subset},
            {"mp", r.value},
            {"minimizer", r.minimizer}};
}

json to_json(const Blueprint& b) {
    return {{"format_version", kFormatVersion},
            {"names", b.names},
            {"means", b.stats.means},
            {"stds", b.stats.stds},
            {"corr", matrix_rows(b.corr.matrix())},
            {"applied_jitter", b.applied_jitter}};
}

json to_json(const VerificationReport& r) {
    json orders = json::array();
    for (const auto& o : r.orders) {
        orders.push_back({{"k", o.k},
                          {"subsets_evaluated", o.subsets_evaluated},
                          {"enumeration", std::string(to_string(o.enumeration))},
                          {"max_abs_deviation", o.max_abs_deviation},
                          {"worst_subset", o.worst_subset}});
    }
    return {{"format_version", kFormatVersion},
            {"orders", orders},
            {"max_mean_deviation", r.max_mean_deviation},
            {"max_std_deviation", r.max_std_deviation},
            {"pairwise_deviation", r.pairwise_deviation},
            {"applied_jitter", r.applied_jitter},
            {"tolerance", r.tolerance},
            {"pass", r.pass}};
}

Blueprint blueprint_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::FormatError, "blueprint must be a JSON object");
    const int version = field<int>(j, "format_version");
    if (version != kFormatVersion) {
        throw Error(ErrorCode::FormatError, "unsupported blueprint format_version " + std::to_string(version));
    }
    Blueprint b;
    b.names = field<std::vector<std::string>>(j, "names");
    b.stats.means = field<std::vector<double>>(j, "means");
    b.stats.stds = field<std::vector<double>>(j, "stds");
    const auto rows = field<std::vector<std::vector<double>>>(j, "corr");
    if (j.contains("applied_jitter")) b.applied_jitter = field<double>(j, "applied_jitter");

    const std::size_t n = b.names.size();
    if (rows.size() != n) throw Error(ErrorCode::FormatError, "blueprint corr has wrong row count");
    Matrix entries(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        if (rows[r].size() != n) throw Error(ErrorCode::FormatError, "blueprint corr row has wrong length");
        for (std::size_t c = 0; c < n; ++c) entries(r, c) = rows[r][c];
    }
    try {
        b.corr = CorrMatrix(std::move(entries));
        b.validate();
    } catch (const Error& e) {
        throw Error(ErrorCode::FormatError, std::string("invalid blueprint: ") + e.what());
    }
    return b;
}

void write_corr_csv(std::ostream& out, const CorrMatrix& c, const std::vector<std::string>& names,
                    char delimiter) {
    write_csv(out, Dataset(names, c.matrix()), delimiter);
}

json load_json(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw Error(ErrorCode::MissingFile, "no such file: " + path.string());
    }
    std::ifstream in(path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::FormatError, path.string() + ": " + e.what());
    }
}

void save_json(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << j.dump(2) << '\n';
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

}  // namespace gcm
