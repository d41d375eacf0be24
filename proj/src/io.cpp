#include "stepop/io.hpp"

#include <fstream>
#include <iostream>

namespace stepop {

namespace {

Json complex_to_json(const Complex& c) {
    return Json::array({c.real(), c.imag()});
}

Complex complex_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(where + ": complex values must be [re, im] arrays");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json subset_to_json(DimSubset alpha) {
    Json j = Json::array();
    for (int d : alpha.dims()) j.push_back(d);
    return j;
}

DimSubset subset_from_json(const Json& j, int n_dims, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": alpha must be a list of dimensions");
    DimSubset alpha;
    int prev = 0;
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw ParseError(where + ": alpha entries must be integers");
        const int d = e.get<int>();
        if (d <= prev) throw ParseError(where + ": alpha must be strictly increasing");
        if (d < 1 || d > n_dims) throw ParseError(where + ": dimension out of range 1..n_dims");
        alpha = alpha.unite(DimSubset::of({d}));
        prev = d;
    }
    return alpha;
}

Json index_to_json(const MultiIndex& idx) {
    Json j = Json::array();
    for (int e : idx.entries()) j.push_back(e);
    return j;
}

int get_int_field(const Json& doc, const std::string& key, int lo, int hi) {
    if (!doc.contains(key) || !doc[key].is_number_integer())
        throw ParseError("missing or non-integer field '" + key + "'");
    const int v = doc[key].get<int>();
    if (v < lo || v > hi)
        throw ParseError("field '" + key + "' out of range [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
    return v;
}

void check_type(const Json& doc, const std::string& expected) {
    if (!doc.is_object()) throw ParseError("document must be a JSON object");
    if (!doc.contains("type") || !doc["type"].is_string() || doc["type"] != expected)
        throw ParseError("document type must be '" + expected + "'");
}

}  // namespace

Json operator_to_json(const StepOperator& a) {
    Json doc;
    doc["type"] = "operator";
    doc["n_dims"] = a.n_dims();
    doc["p"] = a.p();
    Json terms = Json::array();
    for (const auto& [alpha, arr] : a.terms()) {
        Json term;
        term["alpha"] = subset_to_json(alpha);
        Json coeffs = Json::array();
        for (const Complex& c : arr) coeffs.push_back(complex_to_json(c));
        term["coeffs"] = std::move(coeffs);
        terms.push_back(std::move(term));
    }
    doc["terms"] = std::move(terms);
    return doc;
}

StepOperator operator_from_json(const Json& doc) {
    check_type(doc, "operator");
    const int n = get_int_field(doc, "n_dims", 1, kMaxDims);
    const int p = get_int_field(doc, "p", 1, 1 << 20);
    StepOperator a{n, p};
    if (!doc.contains("terms") || !doc["terms"].is_array())
        throw ParseError("missing 'terms' array");
    for (std::size_t t = 0; t < doc["terms"].size(); ++t) {
        const auto& term = doc["terms"][t];
        const std::string where = "terms[" + std::to_string(t) + "]";
        if (!term.is_object() || !term.contains("alpha") || !term.contains("coeffs"))
            throw ParseError(where + ": each term needs 'alpha' and 'coeffs'");
        const DimSubset alpha = subset_from_json(term["alpha"], n, where);
        if (a.has_term(alpha)) throw ParseError(where + ": duplicate alpha");
        auto& arr = a.ensure_term(alpha);
        const auto& coeffs = term["coeffs"];
        if (!coeffs.is_array() || coeffs.size() != arr.size())
            throw ParseError(where + ": 'coeffs' must hold exactly " + std::to_string(arr.size()) +
                             " complex values");
        for (std::size_t k = 0; k < arr.size(); ++k)
            arr[k] = complex_from_json(coeffs[k], where + ".coeffs[" + std::to_string(k) + "]");
    }
    return a;
}

Json function_to_json(const StepFunction& u) {
    Json doc;
    doc["type"] = "function";
    doc["n_dims"] = u.n_dims();
    doc["p"] = u.p();
    doc["q"] = u.q();
    Json values = Json::array();
    for (const Complex& c : u.values()) values.push_back(complex_to_json(c));
    doc["values"] = std::move(values);
    return doc;
}

StepFunction function_from_json(const Json& doc) {
    check_type(doc, "function");
    const int n = get_int_field(doc, "n_dims", 1, kMaxDims);
    const int p = get_int_field(doc, "p", 1, 1 << 20);
    const int q = get_int_field(doc, "q", 1, 1 << 20);
    StepFunction u{n, p, q};
    if (!doc.contains("values") || !doc["values"].is_array() ||
        doc["values"].size() != u.values().size())
        throw ParseError("'values' must hold exactly " + std::to_string(u.values().size()) +
                         " complex values");
    for (std::size_t k = 0; k < u.values().size(); ++k)
        u.values()[k] = complex_from_json(doc["values"][k], "values[" + std::to_string(k) + "]");
    return u;
}

Json representation_to_json(const Representation& r) {
    Json doc;
    doc["type"] = "representation";
    doc["n_dims"] = r.n_dims();
    doc["p"] = r.p();
    Json blocks = Json::array();
    r.layout().for_each([&](DimSubset alpha, std::uint64_t i, std::size_t) {
        Json b;
        b["alpha"] = subset_to_json(alpha);
        b["index"] = index_to_json(index_unrank(alpha.complement(r.n_dims()), i, r.p()));
        const CMatrix& m = r.block(alpha, i);
        Json entries = Json::array();
        for (Eigen::Index row = 0; row < m.rows(); ++row)
            for (Eigen::Index col = 0; col < m.cols(); ++col)
                entries.push_back(complex_to_json(m(row, col)));
        b["matrix"] = std::move(entries);
        blocks.push_back(std::move(b));
    });
    doc["blocks"] = std::move(blocks);
    return doc;
}

Representation representation_from_json(const Json& doc) {
    check_type(doc, "representation");
    const int n = get_int_field(doc, "n_dims", 1, kMaxDims);
    const int p = get_int_field(doc, "p", 1, 1 << 20);
    Representation r{n, p};
    if (!doc.contains("blocks") || !doc["blocks"].is_array())
        throw ParseError("missing 'blocks' array");
    std::vector<bool> seen(r.layout().total_positions(), false);
    for (std::size_t t = 0; t < doc["blocks"].size(); ++t) {
        const auto& b = doc["blocks"][t];
        const std::string where = "blocks[" + std::to_string(t) + "]";
        if (!b.is_object() || !b.contains("alpha") || !b.contains("index") || !b.contains("matrix"))
            throw ParseError(where + ": each block needs 'alpha', 'index', 'matrix'");
        const DimSubset alpha = subset_from_json(b["alpha"], n, where);
        const DimSubset abar = alpha.complement(n);
        if (!b["index"].is_array() || static_cast<int>(b["index"].size()) != abar.size())
            throw ParseError(where + ": 'index' must list one entry per complement dimension");
        std::vector<int> entries;
        for (const auto& e : b["index"]) {
            if (!e.is_number_integer()) throw ParseError(where + ": index entries must be integers");
            entries.push_back(e.get<int>());
            if (entries.back() < 1 || entries.back() > p)
                throw ParseError(where + ": index entry out of range 1..p");
        }
        const std::uint64_t i_rank = index_rank(MultiIndex{abar, entries}, p);
        const std::size_t pos = r.layout().position(alpha, i_rank);
        if (seen[pos]) throw ParseError(where + ": duplicate block");
        seen[pos] = true;
        CMatrix& m = r.block(alpha, i_rank);
        const auto& mat = b["matrix"];
        const auto want = static_cast<std::size_t>(m.rows()) * static_cast<std::size_t>(m.cols());
        if (!mat.is_array() || mat.size() != want)
            throw ParseError(where + ": 'matrix' must hold exactly " + std::to_string(want) +
                             " complex values");
        std::size_t k = 0;
        for (Eigen::Index row = 0; row < m.rows(); ++row)
            for (Eigen::Index col = 0; col < m.cols(); ++col, ++k)
                m(row, col) = complex_from_json(mat[k], where + ".matrix[" + std::to_string(k) + "]");
    }
    for (std::size_t pos = 0; pos < seen.size(); ++pos)
        if (!seen[pos]) throw ParseError("representation is missing blocks");
    return r;
}

Json kernel_to_json(const SampledKernel& k) {
    Json doc;
    doc["type"] = "kernel";
    doc["n_dims"] = k.n_dims;
    doc["resolution"] = k.resolution;
    Json terms = Json::array();
    for (const auto& [alpha, samples] : k.terms) {
        Json term;
        term["alpha"] = subset_to_json(alpha);
        Json values = Json::array();
        for (const Complex& c : samples) values.push_back(complex_to_json(c));
        term["samples"] = std::move(values);
        terms.push_back(std::move(term));
    }
    doc["terms"] = std::move(terms);
    return doc;
}

SampledKernel kernel_from_json(const Json& doc) {
    check_type(doc, "kernel");
    const int n = get_int_field(doc, "n_dims", 1, kMaxDims);
    const int resolution = get_int_field(doc, "resolution", 1, 1 << 20);
    SampledKernel k{n, resolution, {}};
    if (!doc.contains("terms") || !doc["terms"].is_array())
        throw ParseError("missing 'terms' array");
    for (std::size_t t = 0; t < doc["terms"].size(); ++t) {
        const auto& term = doc["terms"][t];
        const std::string where = "terms[" + std::to_string(t) + "]";
        if (!term.is_object() || !term.contains("alpha") || !term.contains("samples"))
            throw ParseError(where + ": each term needs 'alpha' and 'samples'");
        const DimSubset alpha = subset_from_json(term["alpha"], n, where);
        if (k.terms.count(alpha)) throw ParseError(where + ": duplicate alpha");
        auto& samples = k.terms[alpha];
        const std::uint64_t want = k.k_count() * k.x_count(alpha);
        const auto& vals = term["samples"];
        if (!vals.is_array() || vals.size() != want)
            throw ParseError(where + ": 'samples' must hold exactly " + std::to_string(want) +
                             " complex values");
        samples.resize(want);
        for (std::size_t j = 0; j < want; ++j)
            samples[j] = complex_from_json(vals[j], where + ".samples[" + std::to_string(j) + "]");
    }
    return k;
}

Json spectrum_to_json(const SpectrumReport& report) {
    Json doc;
    doc["type"] = "spectrum";
    doc["n_dims"] = report.n_dims;
    doc["p"] = report.p;
    Json entries = Json::array();
    for (const SpectrumEntry& e : report.entries) {
        Json entry;
        entry["value"] = complex_to_json(e.value);
        entry["alpha"] = subset_to_json(e.source_subset);
        entry["index"] =
            index_to_json(index_unrank(e.source_subset.complement(report.n_dims), e.source_index,
                                       report.p));
        entry["label"] = e.label == SpectrumLabel::discrete ? "discrete" : "essential";
        entries.push_back(std::move(entry));
    }
    doc["entries"] = std::move(entries);
    return doc;
}

Json tracedet_to_json(const TraceDetTuple& tuple, const std::string& kind) {
    Json doc;
    doc["type"] = kind;
    doc["n_dims"] = tuple.n_dims;
    doc["p"] = tuple.p;
    Json comps = Json::array();
    const BlockLayout layout{tuple.n_dims, tuple.p};
    layout.for_each([&](DimSubset alpha, std::uint64_t i, std::size_t pos) {
        Json c;
        c["alpha"] = subset_to_json(alpha);
        c["index"] = index_to_json(index_unrank(alpha.complement(tuple.n_dims), i, tuple.p));
        c["value"] = complex_to_json(tuple.components[pos]);
        comps.push_back(std::move(c));
    });
    doc["components"] = std::move(comps);
    return doc;
}

std::string write_document(const Json& doc) {
    return doc.dump(2) + "\n";
}

Json read_document(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string{"invalid JSON: "} + e.what());
    }
}

Json load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return read_document(text);
}

void store_document(const Json& doc, const std::string& path) {
    if (path.empty()) {
        std::cout << write_document(doc);
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    out << write_document(doc);
}

}  // namespace stepop
