#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "udom/geometry.hpp"

namespace udom {

/// A node of an object's decomposition tree. The node owns the contiguous
/// range [begin, end) of the object's sample permutation.
struct Partition {
    Rect rect;            // tight MBR of the contained samples
    double mass = 0.0;    // total weight of the contained samples
    int level = 1;        // root is level 1
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t sample_count() const { return end - begin; }
};

/// Binary kd-tree over an object's samples, deepened on demand.
///
/// Splits happen at the weighted median along the longest side of the node's
/// MBR (lowest dimension index on ties). The left child receives the smallest
/// prefix of axis-sorted samples whose weight reaches half of the node mass,
/// clamped so both children are non-empty. A node whose samples all coincide
/// is atomic and never split.
///
/// Deepening mutates shared state and is serialized by an internal mutex;
/// nodes live in a deque so handed-out pointers stay valid.
class DecompositionTree {
public:
    DecompositionTree(std::size_t dims, std::span<const double> coords,
                      std::span<const double> weights);

    /// Frontier of the tree cut at `depth` levels, deepening as needed.
    std::vector<const Partition*> leaves_at_depth(int depth) const;

    /// Sample indices held by a node of this tree.
    std::vector<std::size_t> sample_indices(const Partition& node) const;

    const Partition& root() const { return nodes_.front(); }
    std::size_t node_count() const;

private:
    struct Links {
        int left = -1;
        int right = -1;
        bool atomic = false;
        bool expanded = false;
    };

    void expand(std::size_t node) const;
    Partition make_node(std::size_t begin, std::size_t end, int level) const;

    std::size_t dims_;
    std::span<const double> coords_;
    std::span<const double> weights_;
    mutable std::vector<std::size_t> order_;
    mutable std::deque<Partition> nodes_;
    mutable std::deque<Links> links_;
    mutable std::mutex mutex_;
};

/// Result of splitting one partition; empty when the node is atomic.
struct SplitResult {
    Partition left;
    Partition right;
};

/// One-shot median split of a sample subset; exposed for testing and reuse by
/// the tree. `indices` is reordered in place so the left child comes first.
std::optional<SplitResult> split(std::size_t dims, std::span<const double> coords,
                                 std::span<const double> weights,
                                 std::span<std::size_t> indices, const Partition& node);

/// A discrete uncertain object: weighted sample points inside a bounding box.
class UncertainObject {
public:
    /// `coords` holds samples row-major (sample count x dims). Weights are
    /// normalized to sum to one.
    UncertainObject(std::string id, std::size_t dims, std::vector<double> coords,
                    std::vector<double> weights);

    UncertainObject(const UncertainObject& o);
    UncertainObject& operator=(const UncertainObject& o);
    // Moving keeps the sample buffers, so the tree's views stay valid.
    UncertainObject(UncertainObject&&) noexcept = default;
    UncertainObject& operator=(UncertainObject&&) noexcept = default;

    const std::string& id() const { return id_; }
    std::size_t dims() const { return dims_; }
    std::size_t sample_count() const { return weights_.size(); }
    std::span<const double> sample(std::size_t i) const
    {
        return {coords_.data() + i * dims_, dims_};
    }
    double weight(std::size_t i) const { return weights_[i]; }
    std::span<const double> coords() const { return coords_; }
    std::span<const double> weights() const { return weights_; }
    const Rect& mbr() const { return mbr_; }

    std::vector<const Partition*> leaves_at_depth(int depth) const
    {
        return tree_->leaves_at_depth(depth);
    }
    const DecompositionTree& tree() const { return *tree_; }

private:
    void init_tree();

    std::string id_;
    std::size_t dims_ = 0;
    std::vector<double> coords_;
    std::vector<double> weights_;
    Rect mbr_;
    std::unique_ptr<DecompositionTree> tree_;
};

/// Builds an object from (point, weight) pairs.
UncertainObject build_object(std::string id,
                             const std::vector<std::pair<std::vector<double>, double>>& samples);

/// Single-sample object at a fixed location.
UncertainObject certain_object(std::string id, std::vector<double> point);

struct SyntheticConfig {
    std::size_t n = 10000;
    std::size_t dims = 2;
    double max_extent = 0.004;
    std::size_t samples_per_object = 100;
    std::uint64_t seed = 1;
};

/// Uniform boxes: lower corner uniform in [0,1]^d, extents uniform in
/// (0, max_extent], samples uniform inside the box with equal weights.
std::vector<UncertainObject> generate_synthetic(const SyntheticConfig& cfg);

enum class DatasetFormat { jsonl, gaussian_csv };

DatasetFormat parse_dataset_format(const std::string& name);

/// Loads a dataset. JSONL rows are `{"id": ..., "samples": [[x1..xd, w], ...]}`;
/// CSV rows are `id, x1..xd, sigma1..sigmad, nsamples` and are sampled from a
/// Gaussian truncated at three sigma, seeded per row from `seed`.
std::vector<UncertainObject> load_dataset(const std::string& path, DatasetFormat format,
                                          std::uint64_t seed = 1);

/// Infers the format from the extension (.csv -> gaussian_csv, else jsonl).
std::vector<UncertainObject> load_dataset(const std::string& path, std::uint64_t seed = 1);

void save_jsonl(const std::vector<UncertainObject>& objects, const std::string& path);
std::string to_jsonl_line(const UncertainObject& obj);
UncertainObject parse_jsonl_line(const std::string& line);

}  // namespace udom
