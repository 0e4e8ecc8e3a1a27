#pragma once

#include <vector>

#include "dgs/image.hpp"
#include "dgs/pose.hpp"

namespace dgs {

/// RMSE of camera positions after closed-form rigid (no-scale) alignment of
/// the estimate onto the ground truth. Trajectories must have equal length
/// and at least two poses; positions are the camera-to-world translations.
double ate_rmse(const std::vector<RigidPose>& estimated,
                const std::vector<RigidPose>& ground_truth);

/// Least-squares rigid alignment (rotation + translation) of points a onto b.
RigidPose umeyama_alignment(const std::vector<Vec3>& a, const std::vector<Vec3>& b);

/// Mean IoU over aligned mask lists; frames where both masks are empty are
/// skipped.
double mean_iou(const std::vector<Mask>& predicted, const std::vector<Mask>& ground_truth);

double mask_iou(const Mask& a, const Mask& b);

struct AddAucResult {
    double add_auc = 0.0;
    double adds_auc = 0.0;
    std::vector<double> add;   // per frame
    std::vector<double> adds;  // per frame
};

/// ADD / ADD-S over a trajectory with the area-under-curve of the accuracy
/// over thresholds [0, max_threshold], 1000 steps, strict comparison.
AddAucResult add_adds_auc(const std::vector<RigidPose>& estimated,
                          const std::vector<RigidPose>& ground_truth,
                          const std::vector<Vec3>& vertices, double max_threshold);

/// 10*log10(1 / MSE) for images in [0,1]; +infinity for identical images.
/// An optional mask restricts the evaluated pixels.
double psnr(const ColorImage& a, const ColorImage& b, const Mask& mask = {});

/// Mean SSIM with an 11x11 Gaussian window (sigma 1.5) and the standard
/// constants, averaged over RGB channels; borders are excluded.
double ssim(const ColorImage& a, const ColorImage& b);

}  // namespace dgs
