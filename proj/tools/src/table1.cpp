#include "table1.hpp"

namespace mollify::cli {
namespace {

std::vector<Rational> coeffs(std::initializer_list<const char*> text) {
    std::vector<Rational> out;
    for (const char* t : text) out.push_back(Rational::parse(t));
    return out;
}

Table1Row row(int k, std::initializer_list<const char*> p, std::initializer_list<const char*> q, const char* value) {
    Table1Row r;
    r.k = k;
    r.spec.p_coeffs = coeffs(p);
    r.spec.q_coeffs = coeffs(q);
    r.published = Rational::parse(value);
    return r;
}

}  // namespace

const std::vector<Table1Row>& table1_rows() {
    // P and Q as printed, coefficients of x, x^2, ...
    static const std::vector<Table1Row> rows = {
        row(0, {"1.05", "-0.05"}, {"0.9"}, "0.3411"),
        row(1, {"0.87", "0", "0.13"}, {"0.15", "-0.11"}, "0.7553"),
        row(2, {"0.75", "0", "0.25"}, {"0.06", "-0.05"}, "0.9085"),
        row(3, {"0.62", "0", "0.32", "0", "0.06"}, {"0.03", "-0.04"}, "0.9643"),
    };
    return rows;
}

const Table1Row& table1_k0_corrected() {
    static const Table1Row r = row(0, {"1.05", "-0.05"}, {"0.45"}, "0.3411");
    return r;
}

}  // namespace mollify::cli
