#include "dgs/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dgs {

RigidPose umeyama_alignment(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("alignment: need two equal-length point sets");
    Vec3 ca = Vec3::Zero(), cb = Vec3::Zero();
    for (size_t i = 0; i < a.size(); ++i) {
        ca += a[i];
        cb += b[i];
    }
    ca /= static_cast<double>(a.size());
    cb /= static_cast<double>(b.size());

    Mat3 H = Mat3::Zero();
    for (size_t i = 0; i < a.size(); ++i) H += (a[i] - ca) * (b[i] - cb).transpose();
    Eigen::JacobiSVD<Mat3> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 R = svd.matrixV() * svd.matrixU().transpose();
    if (R.determinant() < 0.0) {
        Mat3 V = svd.matrixV();
        V.col(2) *= -1.0;
        R = V * svd.matrixU().transpose();
    }
    RigidPose out;
    out.q = Quat(R);
    out.q.normalize();
    out.t = cb - R * ca;
    return out;
}

double ate_rmse(const std::vector<RigidPose>& estimated,
                const std::vector<RigidPose>& ground_truth) {
    if (estimated.size() != ground_truth.size())
        throw std::invalid_argument("ate: trajectory lengths differ");
    if (estimated.size() < 2) throw std::invalid_argument("ate: need at least two poses");
    std::vector<Vec3> est, gt;
    est.reserve(estimated.size());
    gt.reserve(ground_truth.size());
    for (const auto& p : estimated) est.push_back(p.t);
    for (const auto& p : ground_truth) gt.push_back(p.t);

    const RigidPose align = umeyama_alignment(est, gt);
    double sum = 0.0;
    for (size_t i = 0; i < est.size(); ++i) sum += (align.apply(est[i]) - gt[i]).squaredNorm();
    return std::sqrt(sum / static_cast<double>(est.size()));
}

double mask_iou(const Mask& a, const Mask& b) {
    size_t inter = 0, uni = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        inter += (a[i] && b[i]);
        uni += (a[i] || b[i]);
    }
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double mean_iou(const std::vector<Mask>& predicted, const std::vector<Mask>& ground_truth) {
    if (predicted.size() != ground_truth.size())
        throw std::invalid_argument("miou: frame lists differ in length");
    double sum = 0.0;
    size_t counted = 0;
    for (size_t i = 0; i < predicted.size(); ++i) {
        if (mask_count(predicted[i]) == 0 && mask_count(ground_truth[i]) == 0) continue;
        sum += mask_iou(predicted[i], ground_truth[i]);
        ++counted;
    }
    return counted == 0 ? 1.0 : sum / static_cast<double>(counted);
}

AddAucResult add_adds_auc(const std::vector<RigidPose>& estimated,
                          const std::vector<RigidPose>& ground_truth,
                          const std::vector<Vec3>& vertices, double max_threshold) {
    if (estimated.size() != ground_truth.size())
        throw std::invalid_argument("add: trajectory lengths differ");
    if (vertices.empty()) throw std::invalid_argument("add: vertex set is empty");

    AddAucResult res;
    for (size_t f = 0; f < estimated.size(); ++f) {
        std::vector<Vec3> pe, pg;
        pe.reserve(vertices.size());
        pg.reserve(vertices.size());
        for (const auto& v : vertices) {
            pe.push_back(estimated[f].apply(v));
            pg.push_back(ground_truth[f].apply(v));
        }
        double add = 0.0, adds = 0.0;
        for (size_t i = 0; i < vertices.size(); ++i) {
            add += (pe[i] - pg[i]).norm();
            double nearest = std::numeric_limits<double>::infinity();
            for (size_t j = 0; j < vertices.size(); ++j)
                nearest = std::min(nearest, (pe[i] - pg[j]).norm());
            adds += nearest;
        }
        res.add.push_back(add / static_cast<double>(vertices.size()));
        res.adds.push_back(adds / static_cast<double>(vertices.size()));
    }

    auto auc = [&](const std::vector<double>& errors) {
        const int steps = 1000;
        double area = 0.0;
        for (int k = 1; k <= steps; ++k) {
            const double threshold = max_threshold * k / steps;
            size_t below = 0;
            for (double e : errors) below += (e < threshold);
            area += static_cast<double>(below) / errors.size();
        }
        return area / steps;
    };
    res.add_auc = auc(res.add);
    res.adds_auc = auc(res.adds);
    return res;
}

double psnr(const ColorImage& a, const ColorImage& b, const Mask& mask) {
    if (!a.same_size(b)) throw std::invalid_argument("psnr: image sizes differ");
    double sum = 0.0;
    size_t n = 0;
    for (int v = 0; v < a.height(); ++v) {
        for (int u = 0; u < a.width(); ++u) {
            if (!mask.empty() && !mask.at(u, v)) continue;
            sum += (a.at(u, v) - b.at(u, v)).squaredNorm();
            n += 3;
        }
    }
    if (n == 0) return 0.0;
    const double mse = sum / static_cast<double>(n);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / mse);
}

double ssim(const ColorImage& a, const ColorImage& b) {
    if (!a.same_size(b)) throw std::invalid_argument("ssim: image sizes differ");
    constexpr int kHalf = 5;  // 11x11 window
    constexpr double kC1 = 0.01 * 0.01;
    constexpr double kC2 = 0.03 * 0.03;

    double window[11][11];
    double wsum = 0.0;
    for (int i = -kHalf; i <= kHalf; ++i)
        for (int j = -kHalf; j <= kHalf; ++j) {
            window[i + kHalf][j + kHalf] = std::exp(-(i * i + j * j) / (2.0 * 1.5 * 1.5));
            wsum += window[i + kHalf][j + kHalf];
        }
    for (auto& row : window)
        for (double& w : row) w /= wsum;

    double total = 0.0;
    size_t count = 0;
    for (int ch = 0; ch < 3; ++ch) {
        for (int v = kHalf; v < a.height() - kHalf; ++v) {
            for (int u = kHalf; u < a.width() - kHalf; ++u) {
                double ma = 0, mb = 0, va = 0, vb = 0, cov = 0;
                for (int i = -kHalf; i <= kHalf; ++i) {
                    for (int j = -kHalf; j <= kHalf; ++j) {
                        const double w = window[i + kHalf][j + kHalf];
                        const double xa = a.at(u + j, v + i)[ch];
                        const double xb = b.at(u + j, v + i)[ch];
                        ma += w * xa;
                        mb += w * xb;
                        va += w * xa * xa;
                        vb += w * xb * xb;
                        cov += w * xa * xb;
                    }
                }
                va -= ma * ma;
                vb -= mb * mb;
                cov -= ma * mb;
                const double s = ((2 * ma * mb + kC1) * (2 * cov + kC2)) /
                                 ((ma * ma + mb * mb + kC1) * (va + vb + kC2));
                total += s;
                ++count;
            }
        }
    }
    return count == 0 ? 1.0 : total / static_cast<double>(count);
}

}  // namespace dgs
