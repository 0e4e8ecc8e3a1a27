#pragma once

#include <deque>
#include <memory>
#include <vector>

#include "dgs/frame.hpp"
#include "dgs/image.hpp"
#include "dgs/map.hpp"

namespace dgs {

struct PromptPoint {
    Vec2 point = Vec2::Zero();
    bool positive = true;
};

/// Flexible-length memory bank: a bounded queue that never loses its last
/// complete observation once one has been seen.
class SegmenterMemory {
public:
    struct Entry {
        int frame_index = -1;
        Mask mask;
        bool complete = false;
        bool pinned = false;
    };

    explicit SegmenterMemory(size_t max_length = 8, bool flexible = true)
        : max_length_(max_length), flexible_(flexible) {}

    /// Appends an entry and evicts the oldest unpinned entries beyond the
    /// maximum length. When the only remaining complete entry would be
    /// evicted it is pinned instead (the queue grows by the pinned slot);
    /// a fresh complete observation releases earlier pins.
    void update(int frame_index, Mask mask, bool complete);

    bool has_complete() const;
    bool empty() const { return entries_.empty(); }
    size_t size() const { return entries_.size(); }
    size_t max_length() const { return max_length_; }
    const std::deque<Entry>& entries() const { return entries_; }

private:
    size_t max_length_;
    bool flexible_;  // when false (ablation), pinning is disabled
    std::deque<Entry> entries_;
};

/// Pluggable video-segmentation interface. Implementations must be
/// deterministic given frame + prompts + memory + seed. One instance tracks
/// one object.
class Segmenter {
public:
    virtual ~Segmenter() = default;

    /// At least one positive prompt is required on the first call; later
    /// calls may pass none (tracking mode). Throws std::runtime_error when
    /// there is nothing to track.
    virtual Mask segment(const Frame& frame, const std::vector<PromptPoint>& prompts,
                         const SegmenterMemory& memory) = 0;

    /// Ground-truth instance id this tracker is bound to, when known.
    virtual int bound_instance_id() const { return -1; }
};

/// Seeded corruption model applied to ground-truth masks by the oracle
/// segmenter; reproduces typical video-segmentation failure modes.
struct CorruptionConfig {
    uint64_t seed = 0;
    double erode_prob = 0.0;
    int erode_iterations = 2;
    double truncate_component_prob = 0.0;  // keep only prompted components
    double spurious_blob_prob = 0.0;       // add a disk away from the object
    double spurious_blob_radius_px = 12.0;
    double dropout_prob = 0.0;             // return an empty mask
    bool stale_memory = false;             // degrade when memory has no complete entry
    double stale_erode_fraction = 0.6;
};

/// Reads the frame's ground-truth instance labels and corrupts them per the
/// seeded config. Positive prompts bind / extend the mask with ground-truth
/// components; negative prompts remove the mask component containing them.
class OracleSegmenter : public Segmenter {
public:
    explicit OracleSegmenter(CorruptionConfig config) : config_(config) {}

    Mask segment(const Frame& frame, const std::vector<PromptPoint>& prompts,
                 const SegmenterMemory& memory) override;

    int bound_instance_id() const override { return bound_id_; }

private:
    CorruptionConfig config_;
    int bound_id_ = -1;
    std::vector<Vec2> sticky_positive_prompts_;
    int last_frame_ = -1;
    int calls_this_frame_ = 0;
};

/// Constant-velocity absence test: true iff the object was entirely out of
/// view at frame t-1 and the extrapolated camera keeps it from being fully
/// visible at t. When true the pipeline zeroes the mask for the frame.
bool absence_check(const DecomposedMap& map, int object_id, int frame_index,
                   const RigidPose& camera_prev, const RigidPose& camera_prev2,
                   const CameraIntrinsics& K, const RenderSettings& settings = {});

struct RefineThresholds {
    double t_m1 = 0.9;
    double t_m2 = 0.9;
    double t_m3 = 0.7;
};

struct RefineDecision {
    bool refine = false;
    double r1 = 1.0;  // |M ∩ M_i| / |M_i|
    double r2 = 1.0;  // |M ∩ M_o_hat| / |M_o_hat|
    double r3 = 1.0;  // |M ∩ M_o_hat| / |M|
    std::vector<PromptPoint> prompts;
};

/// Coverage test driving one refinement round. Positive prompts are placed
/// at the centroids of the largest uncovered components of the inconsistent
/// region and the rendered object mask; a negative prompt marks the excess
/// region when the precision ratio fails.
RefineDecision refine_mask(const Mask& mask, const Mask& inconsistent, const Mask& rendered_object,
                           const RefineThresholds& thresholds);

/// Mean of the three coverage ratios; used to pick between the original and
/// the refined mask.
double coverage_score(const Mask& mask, const Mask& inconsistent, const Mask& rendered_object);

}  // namespace dgs
