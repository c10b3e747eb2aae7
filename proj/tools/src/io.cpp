#include "semistab_app/io.hpp"

#include <semistab/instances.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>

namespace semistab::app {

namespace {

double as_number(const Json& j, const std::string& where) {
    if (!j.is_number()) {
        throw ValidationError(where + ": expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw ValidationError(where + ": non-finite number");
    }
    return v;
}

} // namespace

Complex complex_from_json(const Json& j, const std::string& where) {
    if (j.is_number()) {
        return {as_number(j, where), 0.0};
    }
    if (j.is_array() && j.size() == 2) {
        return {as_number(j[0], where), as_number(j[1], where)};
    }
    throw ValidationError(where + ": expected a number or an [re, im] pair");
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

ComplexMatrix matrix_from_json(const Json& j) {
    if (j.is_object()) {
        const auto rows = static_cast<Eigen::Index>(number_field(j, "rows"));
        const auto cols = static_cast<Eigen::Index>(number_field(j, "cols"));
        if (rows <= 0 || cols <= 0 || !j.contains("data") || !j["data"].is_array()) {
            throw ValidationError("matrix: need positive rows, cols and a data list");
        }
        const Json& data = j["data"];
        if (data.size() != static_cast<std::size_t>(rows * cols)) {
            throw ValidationError("matrix: data has " + std::to_string(data.size()) +
                                  " entries, expected " + std::to_string(rows * cols));
        }
        if (rows != cols) {
            throw ValidationError("matrix: generator must be square (got " + std::to_string(rows) +
                                  "x" + std::to_string(cols) + ")");
        }
        ComplexMatrix m(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r) {
            for (Eigen::Index c = 0; c < cols; ++c) {
                m(r, c) = complex_from_json(data[static_cast<std::size_t>(r * cols + c)], "matrix");
            }
        }
        return m;
    }
    if (!j.is_array() || j.empty()) {
        throw ValidationError("matrix: expected a nonempty list of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    ComplexMatrix m(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
            throw ValidationError("matrix: generator must be square (row " + std::to_string(r) +
                                  " has " + std::to_string(row.is_array() ? row.size() : 0) +
                                  " entries, expected " + std::to_string(rows) + ")");
        }
        for (Eigen::Index c = 0; c < rows; ++c) {
            m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)], "matrix");
        }
    }
    return m;
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexVector vector_from_json(const Json& j, std::size_t dim, std::uint64_t seed) {
    const auto n = static_cast<Eigen::Index>(dim);
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "ones") {
            return ComplexVector::Ones(n);
        }
        if (s == "random") {
            instances::Rng rng(seed);
            return instances::random_vector(n, rng);
        }
        throw ValidationError("vector: unknown keyword '" + s + "'");
    }
    if (j.is_object() && j.contains("basis")) {
        const double k = number_field(j, "basis");
        if (k < 0.0 || k >= static_cast<double>(dim) || k != std::floor(k)) {
            throw ValidationError("vector: basis index out of range");
        }
        ComplexVector v = ComplexVector::Zero(n);
        v[static_cast<Eigen::Index>(k)] = 1.0;
        return v;
    }
    if (!j.is_array()) {
        throw ValidationError("vector: expected a list, \"ones\", \"random\" or {\"basis\": k}");
    }
    if (j.size() != dim) {
        throw ValidationError("vector: has " + std::to_string(j.size()) +
                              " entries, expected " + std::to_string(dim));
    }
    ComplexVector v(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        v[k] = complex_from_json(j[static_cast<std::size_t>(k)], "vector");
    }
    return v;
}

Json vector_to_json(const ComplexVector& v) {
    Json out = Json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        out.push_back(complex_to_json(v[k]));
    }
    return out;
}

DiscreteMeasure measure_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        throw ValidationError("measure: expected an object with a string 'type'");
    }
    const auto type = j["type"].get<std::string>();
    if (type == "cantor") {
        const double depth = number_field(j, "depth", 20.0);
        if (depth < 0.0 || depth != std::floor(depth)) {
            throw ValidationError("measure: cantor depth must be a nonnegative integer");
        }
        return DiscreteMeasure::cantor(static_cast<unsigned>(depth));
    }
    if (type == "lebesgue") {
        const double n = number_field(j, "n", 4096.0);
        if (n < 1.0 || n != std::floor(n)) {
            throw ValidationError("measure: lebesgue n must be a positive integer");
        }
        return DiscreteMeasure::lebesgue(number_field(j, "a", 0.0), number_field(j, "b", 1.0),
                                         static_cast<std::size_t>(n));
    }
    if (type == "atoms") {
        if (!j.contains("atoms") || !j["atoms"].is_array()) {
            throw ValidationError("measure: 'atoms' must be a list of [location, weight]");
        }
        std::vector<Atom> atoms;
        for (const auto& a : j["atoms"]) {
            if (!a.is_array() || a.size() != 2) {
                throw ValidationError("measure: each atom is [location, weight]");
            }
            atoms.push_back({as_number(a[0], "atom location"), as_number(a[1], "atom weight")});
        }
        return DiscreteMeasure(std::move(atoms));
    }
    throw ValidationError("measure: unknown type '" + type + "'");
}

double number_field(const Json& j, const char* key, std::optional<double> fallback) {
    if (!j.is_object() || !j.contains(key)) {
        if (fallback) {
            return *fallback;
        }
        throw ValidationError(std::string("missing numeric field '") + key + "'");
    }
    return as_number(j[key], key);
}

SignalCsv write_signal_csv(const std::filesystem::path& path, const Signal& s,
                           const Signal& running, std::size_t max_rows) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot write " + path.string());
    }
    SignalCsv info;
    info.file = path.filename().string();
    info.stride = max_rows > 1 && s.size() > max_rows ? (s.size() - 1 + max_rows - 2) / (max_rows - 1) : 1;
    out << "t,re,im,abs,running_mean\n" << std::setprecision(12);
    for (std::size_t k = 0; k < s.size(); k += info.stride) {
        out << s.grid().time(k) << ',' << s[k].real() << ',' << s[k].imag() << ','
            << std::abs(s[k]) << ',' << running[k].real() << '\n';
        ++info.rows;
    }
    return info;
}

void write_plot_script(const std::filesystem::path& path, const std::string& csv_relative,
                       const std::string& title) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot write " + path.string());
    }
    out << "set datafile separator ','\n"
        << "set key top right\n"
        << "set xlabel 't'\n"
        << "set title '" << title << "'\n"
        << "plot '" << csv_relative << "' using 1:4 skip 1 with lines title '|orbit|', \\\n"
        << "     '" << csv_relative << "' using 1:5 skip 1 with lines title 'running mean'\n";
}

} // namespace semistab::app
