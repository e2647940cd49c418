#pragma once

#include <string>
#include <vector>

namespace gysin {

// Dense integer polynomial, coefficient of t^k at index k.
struct Polynomial {
    std::vector<long long> coeff;

    Polynomial() = default;
    explicit Polynomial(std::vector<long long> c) : coeff(std::move(c)) { trim(); }

    void trim() {
        while (!coeff.empty() && coeff.back() == 0) coeff.pop_back();
    }
    int degree() const { return static_cast<int>(coeff.size()) - 1; }
    long long at(int k) const {
        return (k >= 0 && k < static_cast<int>(coeff.size())) ? coeff[k] : 0;
    }
    long long eval(long long x) const {
        long long v = 0;
        for (int k = degree(); k >= 0; --k) v = v * x + coeff[k];
        return v;
    }
    bool operator==(const Polynomial& o) const { return coeff == o.coeff; }
};

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
std::string poly_to_string(const Polynomial& p, const std::string& var = "t");

}  // namespace gysin
