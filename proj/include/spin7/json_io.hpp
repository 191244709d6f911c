#pragma once

#include "spin7/form.hpp"

#include <json.hpp>

#include <string>

namespace spin7 {

using json = nlohmann::ordered_json;

// Input does not match the schema; `field` names the offending JSON path.
class SchemaError : public std::runtime_error {
public:
    SchemaError(const std::string& field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// Form <-> JSON.  Exact coefficients are written as "p/q" strings per tower
// coordinate (re, im, re_sqrtd, im_sqrtd, re_rho, im_rho, re_sqrtd_rho,
// im_sqrtd_rho); float coefficients as JSON numbers under "re"/"im".
// Terms are keyed by "idx" (1-based, increasing) or by "zidx"/"zbaridx".
json form_to_json(const Form& f);
Form form_from_json(const json& j);

json scalar_to_json(const Scalar& s);  // Scalar::str()
json matrix_to_json(const Mat& m);     // rows of scalar_to_json

// Parse "dz12+dz34", "1/2*dz12 - i*dz34", "dz1b2b" (b marks a conjugate).
Form parse_dz_expression(const std::string& s);

}  // namespace spin7
