#include "spin7/json_io.hpp"

#include <array>
#include <cctype>

namespace spin7 {

namespace {

const std::array<const char*, 8> kCoordKeys = {"re",     "im",     "re_sqrtd",     "im_sqrtd",
                                               "re_rho", "im_rho", "re_sqrtd_rho", "im_sqrtd_rho"};

TowerPtr form_field(const Form& f) {
    TowerPtr t = Tower::gaussian();
    for (const auto& [m, c] : f.terms())
        if (c.is_exact() && c.tower() != t) t = Tower::join(t, c.tower());
    return t;
}

bool any_float(const Form& f) {
    for (const auto& [m, c] : f.terms())
        if (!c.is_exact()) return true;
    return false;
}

mpq_class rational_field(const json& v, const std::string& path) {
    if (!v.is_string()) throw SchemaError(path, "expected a rational string \"p/q\"");
    try {
        return parse_rational(v.get<std::string>());
    } catch (const std::exception& e) {
        throw SchemaError(path, e.what());
    }
}

std::vector<int> index_list(const json& v, const std::string& path, int lo, int hi) {
    if (!v.is_array()) throw SchemaError(path, "expected an array of integers");
    std::vector<int> out;
    for (size_t k = 0; k < v.size(); ++k) {
        if (!v[k].is_number_integer()) throw SchemaError(path + "[" + std::to_string(k) + "]", "expected an integer");
        const int x = v[k].get<int>();
        if (x < lo || x > hi) throw SchemaError(path + "[" + std::to_string(k) + "]", "index out of range");
        out.push_back(x);
    }
    return out;
}

}  // namespace

json scalar_to_json(const Scalar& s) { return s.str(); }

json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json form_to_json(const Form& f) {
    json out;
    const bool fl = any_float(f);
    const TowerPtr t = fl ? Tower::gaussian() : form_field(f);
    json field;
    field["d"] = fl ? 0 : t->declared_d();
    field["rho_sq"] = (!fl && t->declares_rho()) ? json(rational_str(t->rho_sq())) : json(nullptr);
    if (fl) field["float"] = true;
    out["field"] = field;
    out["degree"] = f.degree();
    json terms = json::array();
    if (!f.is_zero()) {
        for (Mask m : basis(f.degree())) {
            const Scalar c = f.coeff(m);
            if (c.is_zero()) continue;
            json term;
            term["idx"] = indices(m);
            if (fl) {
                const auto z = c.to_complex();
                term["re"] = z.real();
                term["im"] = z.imag();
            } else {
                const Scalar e = c.embed(t);
                for (int k = 0; k < 8; ++k)
                    if (sgn(e.coord(k)) != 0) term[kCoordKeys[k]] = rational_str(e.coord(k));
            }
            terms.push_back(term);
        }
    }
    out["terms"] = terms;
    return out;
}

Form form_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("$", "expected a Form object");
    long d = 0;
    mpq_class rho_sq = 0;
    bool fl = false;
    if (j.contains("field")) {
        const json& fd = j["field"];
        if (!fd.is_object()) throw SchemaError("field", "expected an object");
        if (fd.contains("d")) {
            if (!fd["d"].is_number_integer() || fd["d"].get<long>() < 0) throw SchemaError("field.d", "expected a non-negative integer");
            d = fd["d"].get<long>();
        }
        if (fd.contains("rho_sq") && !fd["rho_sq"].is_null()) rho_sq = rational_field(fd["rho_sq"], "field.rho_sq");
        if (fd.contains("float")) {
            if (!fd["float"].is_boolean()) throw SchemaError("field.float", "expected a boolean");
            fl = fd["float"].get<bool>();
        }
    }
    TowerPtr t;
    try {
        t = Tower::make(d, rho_sq);
    } catch (const TowerError& e) {
        throw SchemaError("field", e.what());
    }
    if (!j.contains("degree") || !j["degree"].is_number_integer()) throw SchemaError("degree", "expected an integer");
    const int deg = j["degree"].get<int>();
    if (deg < 0 || deg > kDim) throw SchemaError("degree", "must be between 0 and 8");
    if (!j.contains("terms") || !j["terms"].is_array()) throw SchemaError("terms", "expected an array");

    Form f(deg);
    const json& terms = j["terms"];
    for (size_t n = 0; n < terms.size(); ++n) {
        const std::string path = "terms[" + std::to_string(n) + "]";
        const json& term = terms[n];
        if (!term.is_object()) throw SchemaError(path, "expected an object");
        for (auto it = term.begin(); it != term.end(); ++it) {
            const std::string& key = it.key();
            bool known = key == "idx" || key == "zidx" || key == "zbaridx";
            for (const char* k : kCoordKeys) known = known || key == k;
            if (!known) throw SchemaError(path + "." + key, "unknown key");
        }
        Scalar c;
        if (fl) {
            double re = 0, im = 0;
            for (const char* k : {"re", "im"})
                if (term.contains(k)) {
                    if (!term[k].is_number()) throw SchemaError(path + "." + k, "expected a number in a float form");
                    (std::string(k) == "re" ? re : im) = term[k].get<double>();
                }
            c = Scalar::fl(re, im);
        } else {
            std::array<mpq_class, 8> coords;
            for (int k = 0; k < 8; ++k)
                if (term.contains(kCoordKeys[k])) coords[k] = rational_field(term[kCoordKeys[k]], path + "." + kCoordKeys[k]);
            try {
                c = Scalar::from_coords(t, coords);
            } catch (const TowerError& e) {
                throw SchemaError(path, e.what());
            }
        }
        Form piece;
        if (term.contains("idx")) {
            if (term.contains("zidx") || term.contains("zbaridx")) throw SchemaError(path, "idx and zidx/zbaridx are exclusive");
            const auto idx = index_list(term["idx"], path + ".idx", 1, kDim);
            if (static_cast<int>(idx.size()) != deg) throw SchemaError(path + ".idx", "length differs from degree");
            for (size_t k = 1; k < idx.size(); ++k)
                if (idx[k] <= idx[k - 1]) throw SchemaError(path + ".idx", "indices must be strictly increasing");
            piece = Form::dx(idx, c);
        } else if (term.contains("zidx") || term.contains("zbaridx")) {
            std::vector<int> word;
            if (term.contains("zidx")) word = index_list(term["zidx"], path + ".zidx", 1, kDim / 2);
            if (term.contains("zbaridx"))
                for (int z : index_list(term["zbaridx"], path + ".zbaridx", 1, kDim / 2)) word.push_back(-z);
            if (static_cast<int>(word.size()) != deg) throw SchemaError(path, "zidx + zbaridx length differs from degree");
            piece = dz_word(word) * c;
        } else {
            throw SchemaError(path, "missing idx (or zidx/zbaridx)");
        }
        f += piece;
    }
    return f;
}

Form parse_dz_expression(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw SchemaError("expression", "empty");
    Form out;
    bool have = false;
    size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (have) {
            throw SchemaError("expression", "expected + or - at position " + std::to_string(pos));
        }
        const size_t dz = s.find("dz", pos);
        if (dz == std::string::npos) throw SchemaError("expression", "missing dz at position " + std::to_string(pos));
        Scalar coef(sign);
        if (dz > pos) {
            std::string c = s.substr(pos, dz - pos);
            if (c.back() != '*') throw SchemaError("expression", "coefficient must end with '*'");
            c.pop_back();
            if (c.size() > 1 && c.front() == '(' && c.back() == ')') c = c.substr(1, c.size() - 2);
            try {
                coef = coef * parse_gaussian(c);
            } catch (const std::exception& e) {
                throw SchemaError("expression", e.what());
            }
        }
        pos = dz + 2;
        std::vector<int> word;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            int z = s[pos] - '0';
            if (z < 1 || z > kDim / 2) throw SchemaError("expression", "dz index out of range");
            ++pos;
            if (pos < s.size() && s[pos] == 'b') {
                z = -z;
                ++pos;
            }
            word.push_back(z);
        }
        if (word.empty()) throw SchemaError("expression", "dz without indices");
        Form term = dz_word(word) * coef;
        if (!have) {
            out = term;
            have = true;
        } else {
            if (term.degree() != out.degree()) throw SchemaError("expression", "mixed degrees");
            out += term;
        }
    }
    return out;
}

}  // namespace spin7
