#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace dgs {

/// Adaptive-moments gradient descent over a fixed-size parameter vector.
class AdamVector {
public:
    explicit AdamVector(size_t n, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
        : m_(n, 0.0), v_(n, 0.0), beta1_(beta1), beta2_(beta2), eps_(eps) {}

    size_t size() const { return m_.size(); }

    /// One descent step in place: params -= lr * m_hat / (sqrt(v_hat) + eps).
    void step(std::span<double> params, std::span<const double> grads, double lr) {
        ++t_;
        const double bc1 = 1.0 - std::pow(beta1_, t_);
        const double bc2 = 1.0 - std::pow(beta2_, t_);
        for (size_t i = 0; i < m_.size(); ++i) {
            m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grads[i];
            v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grads[i] * grads[i];
            const double m_hat = m_[i] / bc1;
            const double v_hat = v_[i] / bc2;
            params[i] -= lr * m_hat / (std::sqrt(v_hat) + eps_);
        }
    }

    /// Drops the state of removed parameters, keeping survivors' history.
    void compact(const std::vector<size_t>& keep) {
        std::vector<double> m2(keep.size()), v2(keep.size());
        for (size_t i = 0; i < keep.size(); ++i) {
            m2[i] = m_[keep[i]];
            v2[i] = v_[keep[i]];
        }
        m_ = std::move(m2);
        v_ = std::move(v2);
    }

    /// Appends zero-state slots for newly added parameters.
    void grow(size_t n_new) {
        m_.resize(m_.size() + n_new, 0.0);
        v_.resize(v_.size() + n_new, 0.0);
    }

private:
    std::vector<double> m_, v_;
    double beta1_, beta2_, eps_;
    int t_ = 0;
};

}  // namespace dgs
