#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <complex>
#include <initializer_list>

namespace levyup {

using Complex = std::complex<double>;

// Point or frequency in R^d, d <= 3. Fixed capacity so that the Monte Carlo
// inner loop never allocates.
class Vec {
public:
    static constexpr int kMaxDim = 3;

    explicit Vec(int dim = 1) : dim_(dim) { assert(dim >= 1 && dim <= kMaxDim); }
    Vec(std::initializer_list<double> xs) : dim_(static_cast<int>(xs.size())) {
        assert(dim_ >= 1 && dim_ <= kMaxDim);
        int i = 0;
        for (double x : xs) v_[i++] = x;
    }

    static Vec scalar(double x) { return Vec{x}; }
    static Vec filled(int dim, double x) {
        Vec v(dim);
        for (int i = 0; i < dim; ++i) v.v_[i] = x;
        return v;
    }

    int dim() const { return dim_; }
    double operator[](int i) const { return v_[i]; }
    double& operator[](int i) { return v_[i]; }

    double dot(const Vec& o) const {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) s += v_[i] * o.v_[i];
        return s;
    }
    double norm() const {
        if (dim_ == 1) return std::abs(v_[0]);
        return std::sqrt(dot(*this));
    }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < dim_; ++i) v_[i] += o.v_[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < dim_; ++i) v_[i] -= o.v_[i];
        return *this;
    }
    Vec& operator*=(double s) {
        for (int i = 0; i < dim_; ++i) v_[i] *= s;
        return *this;
    }
    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(Vec a, double s) { return a *= s; }
    friend Vec operator*(double s, Vec a) { return a *= s; }
    friend Vec operator-(Vec a) { return a *= -1.0; }

    bool operator==(const Vec& o) const {
        if (dim_ != o.dim_) return false;
        for (int i = 0; i < dim_; ++i)
            if (v_[i] != o.v_[i]) return false;
        return true;
    }

private:
    std::array<double, kMaxDim> v_{};
    int dim_;
};

}  // namespace levyup
