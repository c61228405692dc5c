#include "sivhs_cli/spec_io.hpp"

#include <fstream>
#include <sstream>

#include "sivhs/errors.hpp"

namespace sivhs::cli {

namespace {

const std::string kModule = "cli";

[[noreturn]] void fail(const std::string& origin, const std::string& where, const std::string& what) {
    throw ParseError(kModule, origin + ": " + where + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& origin, const std::string& where) {
    if (!obj.is_object()) fail(origin, where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(origin, where + "/" + key, "missing field");
    return *it;
}

std::string text(const Json& j, const std::string& origin, const std::string& where) {
    if (!j.is_string()) fail(origin, where, "expected a string");
    return j.get<std::string>();
}

int integer(const Json& j, const std::string& origin, const std::string& where) {
    if (!j.is_number_integer()) fail(origin, where, "expected an integer");
    return j.get<int>();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(kModule, path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json parse_document(const std::string& body, const std::string& origin) {
    try {
        return Json::parse(body);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < body.size(); ++i) {
            if (body[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(kModule, origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
    }
}

int symbol(const GradedBasis& B, const Json& j, const std::string& origin, const std::string& where) {
    auto s = text(j, origin, where);
    auto i = B.find(s);
    if (!i) fail(origin, where, "unknown symbol '" + s + "'");
    return *i;
}

LinearOp parse_op(const Json& list, const BasisPtr& B, Bidegree shift, const std::string& origin,
                  const std::string& where) {
    if (!list.is_array()) fail(origin, where, "expected a list of entries");
    LinearOp op(B, B, shift, 1);
    for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string at = where + "/" + std::to_string(k);
        const auto& e = list[k];
        int from = symbol(*B, field(e, "from", origin, at), origin, at + "/from");
        int to = symbol(*B, field(e, "to", origin, at), origin, at + "/to");
        op.add_entry(to, from, parse_rational(field(e, "coeff", origin, at), origin + ": " + at + "/coeff"));
    }
    return op;
}

Json op_to_json(const LinearOp& op) {
    const auto& B = *op.src();
    Json list = Json::array();
    for (std::size_t c = 0; c < B.dim(); ++c)
        for (const auto& [r, v] : op.column(static_cast<int>(c)))
            list.push_back({{"from", B.name(static_cast<int>(c))}, {"to", B.name(r)}, {"coeff", rational(v)}});
    return list;
}

} // namespace

Json rational(const Scalar& s) { return s.str(); }

Scalar parse_rational(const Json& j, const std::string& where) {
    if (!j.is_string()) throw ParseError(kModule, where + ": expected a \"num/den\" string");
    try {
        return Scalar::parse(j.get<std::string>());
    } catch (const Error&) {
        throw ParseError(kModule, where + ": malformed rational '" + j.get<std::string>() + "'");
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

DgbvAlgebra algebra_from_json(const Json& doc, const std::string& origin) {
    DgbvAlgebra alg;
    alg.name = text(field(doc, "name", origin, ""), origin, "/name");
    alg.n = integer(field(doc, "n", origin, ""), origin, "/n");

    const Json& basis = field(doc, "basis", origin, "");
    if (!basis.is_array() || basis.empty()) fail(origin, "/basis", "expected a non-empty list");
    std::vector<std::string> names;
    std::vector<Bidegree> degrees;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const std::string at = "/basis/" + std::to_string(k);
        names.push_back(text(field(basis[k], "symbol", origin, at), origin, at + "/symbol"));
        degrees.push_back({integer(field(basis[k], "p", origin, at), origin, at + "/p"),
                           integer(field(basis[k], "q", origin, at), origin, at + "/q")});
    }
    try {
        alg.basis = make_basis(names, degrees);
    } catch (const Error& e) {
        fail(origin, "/basis", e.what());
    }
    if (auto it = doc.find("dim"); it != doc.end()) {
        const int dim = integer(*it, origin, "/dim");
        if (dim != static_cast<int>(alg.basis->dim()))
            fail(origin, "/dim", "declares " + std::to_string(dim) + " but the basis has " +
                                     std::to_string(alg.basis->dim()) + " entries");
    }
    alg.unit = symbol(*alg.basis, field(doc, "unit", origin, ""), origin, "/unit");

    const Json& product = field(doc, "product", origin, "");
    if (!product.is_array()) fail(origin, "/product", "expected a list of triples");
    const std::size_t dim = alg.basis->dim();
    std::vector<std::vector<SparseVec>> table(dim, std::vector<SparseVec>(dim));
    for (std::size_t k = 0; k < product.size(); ++k) {
        const std::string at = "/product/" + std::to_string(k);
        const auto& e = product[k];
        int a = symbol(*alg.basis, field(e, "a", origin, at), origin, at + "/a");
        int b = symbol(*alg.basis, field(e, "b", origin, at), origin, at + "/b");
        int c = symbol(*alg.basis, field(e, "c", origin, at), origin, at + "/c");
        axpy(table[a][b], parse_rational(field(e, "coeff", origin, at), origin + ": " + at + "/coeff"), unit_vector(c));
    }
    alg.product = Bilinear(alg.basis, alg.basis, alg.basis, {0, 0}, 0);
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b)
            if (!table[a][b].empty()) alg.product.set(static_cast<int>(a), static_cast<int>(b), table[a][b]);

    alg.d = parse_op(field(doc, "d", origin, ""), alg.basis, {0, 1}, origin, "/d");
    alg.delta = parse_op(field(doc, "delta", origin, ""), alg.basis, {-1, 0}, origin, "/delta");

    if (auto it = doc.find("integral"); it != doc.end()) {
        if (!it->is_array()) fail(origin, "/integral", "expected a list of entries");
        std::vector<Scalar> values(dim);
        for (std::size_t k = 0; k < it->size(); ++k) {
            const std::string at = "/integral/" + std::to_string(k);
            int s = symbol(*alg.basis, field((*it)[k], "symbol", origin, at), origin, at + "/symbol");
            values[s] = parse_rational(field((*it)[k], "value", origin, at), origin + ": " + at + "/value");
        }
        alg.integral = values;
    }
    if (auto it = doc.find("calibration"); it != doc.end()) {
        SparseVec v;
        if (it->is_string()) {
            v[symbol(*alg.basis, *it, origin, "/calibration")] = 1;
        } else if (it->is_array()) {
            for (std::size_t k = 0; k < it->size(); ++k) {
                const std::string at = "/calibration/" + std::to_string(k);
                int s = symbol(*alg.basis, field((*it)[k], "symbol", origin, at), origin, at + "/symbol");
                axpy(v, parse_rational(field((*it)[k], "coeff", origin, at), origin + ": " + at + "/coeff"),
                     unit_vector(s));
            }
        } else {
            fail(origin, "/calibration", "expected a symbol or a list of entries");
        }
        alg.calibration = v;
    }
    return alg;
}

Json algebra_to_json(const DgbvAlgebra& alg) {
    const auto& B = *alg.basis;
    const std::size_t dim = B.dim();
    Json doc;
    doc["name"] = alg.name;
    doc["n"] = alg.n;
    doc["dim"] = dim;
    Json basis = Json::array();
    for (std::size_t i = 0; i < dim; ++i) {
        const auto deg = B.bidegree(static_cast<int>(i));
        basis.push_back({{"symbol", B.name(static_cast<int>(i))}, {"p", deg.p}, {"q", deg.q}});
    }
    doc["basis"] = basis;
    doc["unit"] = B.name(alg.unit);
    Json product = Json::array();
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b)
            for (const auto& [c, v] : alg.product.at(static_cast<int>(a), static_cast<int>(b)))
                product.push_back({{"a", B.name(static_cast<int>(a))},
                                   {"b", B.name(static_cast<int>(b))},
                                   {"c", B.name(c)},
                                   {"coeff", rational(v)}});
    doc["product"] = product;
    doc["d"] = op_to_json(alg.d);
    doc["delta"] = op_to_json(alg.delta);
    if (alg.integral) {
        Json list = Json::array();
        for (std::size_t i = 0; i < dim; ++i)
            if (!(*alg.integral)[i].is_zero())
                list.push_back({{"symbol", B.name(static_cast<int>(i))}, {"value", rational((*alg.integral)[i])}});
        doc["integral"] = list;
    }
    if (alg.calibration) {
        const auto& v = *alg.calibration;
        if (v.size() == 1 && v.begin()->second == Scalar(1)) {
            doc["calibration"] = B.name(v.begin()->first);
        } else {
            Json list = Json::array();
            for (const auto& [i, c] : v) list.push_back({{"symbol", B.name(i)}, {"coeff", rational(c)}});
            doc["calibration"] = list;
        }
    }
    return doc;
}

DgbvAlgebra parse_spec_text(const std::string& body, const std::string& origin) {
    DgbvAlgebra alg = algebra_from_json(parse_document(body, origin), origin);
    Report rep = check_dgbv_axioms(alg);
    if (!rep.all_pass()) throw ValidationError(kModule, origin + ": " + rep.summary());
    return alg;
}

DgbvAlgebra parse_spec(const std::string& path) { return parse_spec_text(read_file(path), path); }

Matrix parse_metric(const std::string& path) {
    Json doc = parse_document(read_file(path), path);
    const int n = integer(field(doc, "n", path, ""), path, "/n");
    const Json& rows = field(doc, "g", path, "");
    if (n < 1 || !rows.is_array() || static_cast<int>(rows.size()) != n)
        fail(path, "/g", "expected " + std::to_string(n) + " rows");
    Matrix g(n, n);
    for (int i = 0; i < n; ++i) {
        const std::string at = "/g/" + std::to_string(i);
        if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
            fail(path, at, "expected " + std::to_string(n) + " entries");
        for (int j = 0; j < n; ++j) g(i, j) = parse_rational(rows[i][j], path + ": " + at + "/" + std::to_string(j));
    }
    return g;
}

Json metric_to_json(const Matrix& g) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < g.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < g.cols(); ++j) row.push_back(rational(g(i, j)));
        rows.push_back(row);
    }
    return {{"n", g.rows()}, {"g", rows}};
}

OppositeFiltration parse_filtration(const std::string& path, const VhsFrame& frame) {
    Json doc = parse_document(read_file(path), path);
    OppositeFiltration w = default_opposite(frame);
    const Json& spans = field(doc, "spans", path, "");
    if (!spans.is_array()) fail(path, "/spans", "expected a list");
    for (std::size_t k = 0; k < spans.size(); ++k) {
        const std::string at = "/spans/" + std::to_string(k);
        const Scalar r = parse_rational(field(spans[k], "r", path, at), path + ": " + at + "/r");
        const Scalar s = r * Scalar(2);
        if (!s.is_integer()) fail(path, at + "/r", "r must be a half-integer");
        const int si = static_cast<int>(s.mpq().get_num().get_si());
        if (si < w.lo || si > w.hi)
            fail(path, at + "/r", "outside [" + format_r(w.lo) + ", " + format_r(w.hi) + "]");
        const Json& vectors = field(spans[k], "vectors", path, at);
        if (!vectors.is_array()) fail(path, at + "/vectors", "expected a list");
        std::vector<SparseVec> span;
        for (std::size_t v = 0; v < vectors.size(); ++v) {
            const std::string vat = at + "/vectors/" + std::to_string(v);
            if (!vectors[v].is_object()) fail(path, vat, "expected an object");
            SparseVec x;
            for (const auto& [key, val] : vectors[v].items()) {
                auto j = frame.classes->find(key);
                if (!j) fail(path, vat + "/" + key, "unknown class");
                axpy(x, parse_rational(val, path + ": " + vat + "/" + key), unit_vector(*j));
            }
            span.push_back(x);
        }
        w.spans[si] = span;
    }
    return w;
}

} // namespace sivhs::cli
