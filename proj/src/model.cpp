#include "udom/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"

namespace udom {

namespace {

using json = nlohmann::json;

Rect bounding_box(std::size_t dims, std::span<const double> coords,
                  std::span<const std::size_t> indices)
{
    std::vector<Interval> box(dims, Interval{INFINITY, -INFINITY});
    for (std::size_t idx : indices) {
        for (std::size_t d = 0; d < dims; ++d) {
            double x = coords[idx * dims + d];
            box[d].lo = std::min(box[d].lo, x);
            box[d].hi = std::max(box[d].hi, x);
        }
    }
    return Rect(std::move(box));
}

double sum_weights(std::span<const double> weights, std::span<const std::size_t> indices)
{
    double s = 0.0;
    for (std::size_t idx : indices) s += weights[idx];
    return s;
}

// 53-bit uniform in [0, 1); portable across standard libraries.
double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& rng)
{
    // Box-Muller; u1 in (0, 1].
    double u1 = 1.0 - uniform01(rng);
    double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// splitmix64 finalizer; derives an independent stream per dataset row.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    return out;
}

bool parse_double(const std::string& s, double& out)
{
    if (s.empty()) return false;
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// split / DecompositionTree

std::optional<SplitResult> split(std::size_t dims, std::span<const double> coords,
                                 std::span<const double> weights,
                                 std::span<std::size_t> indices, const Partition& node)
{
    if (indices.size() < 2) return std::nullopt;

    std::size_t axis = 0;
    double widest = -1.0;
    for (std::size_t d = 0; d < dims; ++d) {
        double len = node.rect[d].length();
        if (len > widest) {
            widest = len;
            axis = d;
        }
    }
    // Tight MBR with zero extent everywhere: all samples coincide.
    if (widest <= 0.0) return std::nullopt;

    std::stable_sort(indices.begin(), indices.end(), [&](std::size_t a, std::size_t b) {
        double xa = coords[a * dims + axis];
        double xb = coords[b * dims + axis];
        return xa < xb || (xa == xb && a < b);
    });

    double half = 0.5 * node.mass;
    double slack = 1e-12 * node.mass;
    double acc = 0.0;
    std::size_t cut = 0;
    while (cut < indices.size()) {
        acc += weights[indices[cut]];
        ++cut;
        if (acc >= half - slack) break;
    }
    cut = std::clamp<std::size_t>(cut, 1, indices.size() - 1);

    auto left_idx = indices.subspan(0, cut);
    auto right_idx = indices.subspan(cut);

    SplitResult out;
    out.left.rect = bounding_box(dims, coords, left_idx);
    out.left.mass = sum_weights(weights, left_idx);
    out.left.level = node.level + 1;
    out.left.begin = node.begin;
    out.left.end = node.begin + cut;
    out.right.rect = bounding_box(dims, coords, right_idx);
    out.right.mass = sum_weights(weights, right_idx);
    out.right.level = node.level + 1;
    out.right.begin = node.begin + cut;
    out.right.end = node.end;
    return out;
}

DecompositionTree::DecompositionTree(std::size_t dims, std::span<const double> coords,
                                     std::span<const double> weights)
    : dims_(dims), coords_(coords), weights_(weights), order_(weights.size())
{
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    nodes_.push_back(make_node(0, order_.size(), 1));
    links_.emplace_back();
}

Partition DecompositionTree::make_node(std::size_t begin, std::size_t end, int level) const
{
    std::span<const std::size_t> idx(order_.data() + begin, end - begin);
    Partition p;
    p.rect = bounding_box(dims_, coords_, idx);
    p.mass = sum_weights(weights_, idx);
    p.level = level;
    p.begin = begin;
    p.end = end;
    return p;
}

void DecompositionTree::expand(std::size_t node) const
{
    Links& link = links_[node];
    if (link.expanded) return;
    link.expanded = true;
    const Partition& parent = nodes_[node];
    std::span<std::size_t> idx(order_.data() + parent.begin, parent.sample_count());
    auto result = split(dims_, coords_, weights_, idx, parent);
    if (!result) {
        link.atomic = true;
        return;
    }
    link.left = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(result->left));
    links_.emplace_back();
    link.right = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(result->right));
    links_.emplace_back();
}

std::vector<const Partition*> DecompositionTree::leaves_at_depth(int depth) const
{
    if (depth < 1) throw Error("depth must be >= 1");
    std::lock_guard lock(mutex_);
    std::vector<const Partition*> out;
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
        std::size_t n = stack.back();
        stack.pop_back();
        if (nodes_[n].level >= depth) {
            out.push_back(&nodes_[n]);
            continue;
        }
        expand(n);
        const Links& link = links_[n];
        if (link.atomic) {
            out.push_back(&nodes_[n]);
            continue;
        }
        // Right first so the left subtree is emitted first.
        stack.push_back(static_cast<std::size_t>(link.right));
        stack.push_back(static_cast<std::size_t>(link.left));
    }
    return out;
}

std::vector<std::size_t> DecompositionTree::sample_indices(const Partition& node) const
{
    std::lock_guard lock(mutex_);
    return {order_.begin() + static_cast<std::ptrdiff_t>(node.begin),
            order_.begin() + static_cast<std::ptrdiff_t>(node.end)};
}

std::size_t DecompositionTree::node_count() const
{
    std::lock_guard lock(mutex_);
    return nodes_.size();
}

// ---------------------------------------------------------------------------
// UncertainObject

UncertainObject::UncertainObject(std::string id, std::size_t dims, std::vector<double> coords,
                                 std::vector<double> weights)
    : id_(std::move(id)), dims_(dims), coords_(std::move(coords)), weights_(std::move(weights))
{
    if (dims_ == 0) throw Error("object '" + id_ + "': dimensionality must be >= 1");
    if (weights_.empty()) throw Error("object '" + id_ + "': empty sample list");
    if (coords_.size() != weights_.size() * dims_) {
        throw Error("object '" + id_ + "': coordinate count does not match samples x dims");
    }
    for (double c : coords_) {
        if (!std::isfinite(c)) throw Error("object '" + id_ + "': non-finite coordinate");
    }
    double total = 0.0;
    for (double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw Error("object '" + id_ + "': sample weights must be positive and finite");
        }
        total += w;
    }
    for (double& w : weights_) w /= total;
    init_tree();
}

UncertainObject::UncertainObject(const UncertainObject& o)
    : id_(o.id_), dims_(o.dims_), coords_(o.coords_), weights_(o.weights_), mbr_(o.mbr_)
{
    tree_ = std::make_unique<DecompositionTree>(dims_, coords_, weights_);
}

UncertainObject& UncertainObject::operator=(const UncertainObject& o)
{
    if (this != &o) {
        UncertainObject tmp(o);
        *this = std::move(tmp);
    }
    return *this;
}

void UncertainObject::init_tree()
{
    tree_ = std::make_unique<DecompositionTree>(dims_, coords_, weights_);
    mbr_ = tree_->root().rect;
}

UncertainObject build_object(std::string id,
                             const std::vector<std::pair<std::vector<double>, double>>& samples)
{
    if (samples.empty()) throw Error("object '" + id + "': empty sample list");
    std::size_t dims = samples.front().first.size();
    std::vector<double> coords;
    std::vector<double> weights;
    coords.reserve(samples.size() * dims);
    for (const auto& [pt, w] : samples) {
        if (pt.size() != dims) throw Error("object '" + id + "': inconsistent sample dimensions");
        coords.insert(coords.end(), pt.begin(), pt.end());
        weights.push_back(w);
    }
    return UncertainObject(std::move(id), dims, std::move(coords), std::move(weights));
}

UncertainObject certain_object(std::string id, std::vector<double> point)
{
    std::size_t dims = point.size();
    return UncertainObject(std::move(id), dims, std::move(point), {1.0});
}

// ---------------------------------------------------------------------------
// Synthetic data

std::vector<UncertainObject> generate_synthetic(const SyntheticConfig& cfg)
{
    if (cfg.n < 1 || cfg.dims < 1 || cfg.samples_per_object < 1) {
        throw Error("generate: n, dims and samples per object must be >= 1");
    }
    if (!(cfg.max_extent > 0.0 && cfg.max_extent < 1.0)) {
        throw Error("generate: max extent must lie in (0, 1)");
    }
    std::mt19937_64 rng(cfg.seed);
    std::vector<UncertainObject> out;
    out.reserve(cfg.n);
    std::vector<double> lo(cfg.dims), ext(cfg.dims);
    for (std::size_t i = 0; i < cfg.n; ++i) {
        for (std::size_t d = 0; d < cfg.dims; ++d) {
            lo[d] = uniform01(rng);
            ext[d] = (1.0 - uniform01(rng)) * cfg.max_extent;
        }
        std::vector<double> coords(cfg.samples_per_object * cfg.dims);
        for (std::size_t s = 0; s < cfg.samples_per_object; ++s) {
            for (std::size_t d = 0; d < cfg.dims; ++d) {
                coords[s * cfg.dims + d] = lo[d] + uniform01(rng) * ext[d];
            }
        }
        std::vector<double> weights(cfg.samples_per_object, 1.0);
        out.emplace_back(std::to_string(i), cfg.dims, std::move(coords), std::move(weights));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dataset IO

DatasetFormat parse_dataset_format(const std::string& name)
{
    if (name == "jsonl") return DatasetFormat::jsonl;
    if (name == "csv" || name == "gaussian_csv") return DatasetFormat::gaussian_csv;
    throw Error("unknown dataset format '" + name + "' (expected jsonl or csv)");
}

UncertainObject parse_jsonl_line(const std::string& line)
{
    json row = json::parse(line, nullptr, false);
    if (row.is_discarded()) throw Error("malformed JSON");
    if (!row.is_object() || !row.contains("id") || !row.contains("samples")) {
        throw Error("expected an object with \"id\" and \"samples\"");
    }
    std::string id = row["id"].is_string() ? row["id"].get<std::string>() : row["id"].dump();
    const json& samples = row["samples"];
    if (!samples.is_array() || samples.empty()) throw Error("\"samples\" must be a non-empty array");
    std::size_t width = 0;
    std::vector<double> coords;
    std::vector<double> weights;
    for (const json& s : samples) {
        if (!s.is_array() || s.size() < 2) {
            throw Error("each sample must be [x1..xd, w] with d >= 1");
        }
        if (width == 0) width = s.size();
        if (s.size() != width) throw Error("dimension inconsistency within object '" + id + "'");
        for (const json& v : s) {
            if (!v.is_number()) throw Error("sample entries must be numbers");
        }
        for (std::size_t k = 0; k + 1 < s.size(); ++k) coords.push_back(s[k].get<double>());
        weights.push_back(s.back().get<double>());
    }
    return UncertainObject(std::move(id), width - 1, std::move(coords), std::move(weights));
}

std::string to_jsonl_line(const UncertainObject& obj)
{
    json samples = json::array();
    for (std::size_t i = 0; i < obj.sample_count(); ++i) {
        json row = json::array();
        for (double x : obj.sample(i)) row.push_back(x);
        row.push_back(obj.weight(i));
        samples.push_back(std::move(row));
    }
    json out;
    out["id"] = obj.id();
    out["samples"] = std::move(samples);
    return out.dump();
}

void save_jsonl(const std::vector<UncertainObject>& objects, const std::string& path)
{
    std::ofstream os(path);
    if (!os) throw Error("cannot open '" + path + "' for writing");
    for (const auto& o : objects) os << to_jsonl_line(o) << '\n';
    if (!os) throw Error("write failed for '" + path + "'");
}

namespace {

std::vector<UncertainObject> load_jsonl(std::istream& is)
{
    std::vector<UncertainObject> out;
    std::string line;
    std::size_t lineno = 0;
    std::size_t dims = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        try {
            auto obj = parse_jsonl_line(line);
            if (dims == 0) dims = obj.dims();
            if (obj.dims() != dims) {
                throw Error("dimension inconsistency: expected " + std::to_string(dims) +
                            ", got " + std::to_string(obj.dims()));
            }
            out.push_back(std::move(obj));
        } catch (const std::exception& e) {
            throw Error("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::vector<UncertainObject> load_gaussian_csv(std::istream& is, std::uint64_t seed)
{
    std::vector<UncertainObject> out;
    std::string line;
    std::size_t lineno = 0;
    std::size_t dims = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (trim(line).empty() || trim(line)[0] == '#') continue;
        auto cells = split_csv(line);
        double probe = 0.0;
        if (lineno == 1 && cells.size() > 1 && !parse_double(cells[1], probe)) continue;  // header
        try {
            if (cells.size() < 4 || cells.size() % 2 != 0) {
                throw Error("expected id, x1..xd, sigma1..sigmad, nsamples");
            }
            std::size_t d = (cells.size() - 2) / 2;
            if (dims == 0) dims = d;
            if (d != dims) {
                throw Error("dimension inconsistency: expected " + std::to_string(dims) +
                            ", got " + std::to_string(d));
            }
            std::vector<double> mean(d), sigma(d);
            for (std::size_t k = 0; k < d; ++k) {
                if (!parse_double(cells[1 + k], mean[k]) || !std::isfinite(mean[k])) {
                    throw Error("bad coordinate '" + cells[1 + k] + "'");
                }
                if (!parse_double(cells[1 + d + k], sigma[k]) || !(sigma[k] >= 0.0)) {
                    throw Error("bad sigma '" + cells[1 + d + k] + "'");
                }
            }
            double count_d = 0.0;
            if (!parse_double(cells.back(), count_d) || count_d < 1.0 ||
                count_d != std::floor(count_d)) {
                throw Error("bad sample count '" + cells.back() + "'");
            }
            auto count = static_cast<std::size_t>(count_d);
            std::mt19937_64 rng(mix_seed(seed, lineno));
            std::vector<double> coords(count * d);
            for (std::size_t s = 0; s < count; ++s) {
                for (std::size_t k = 0; k < d; ++k) {
                    double z = 0.0;
                    do {
                        z = standard_normal(rng);
                    } while (std::fabs(z) > 3.0);
                    coords[s * d + k] = mean[k] + sigma[k] * z;
                }
            }
            out.emplace_back(cells[0], d, std::move(coords), std::vector<double>(count, 1.0));
        } catch (const std::exception& e) {
            throw Error("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace

std::vector<UncertainObject> load_dataset(const std::string& path, DatasetFormat format,
                                          std::uint64_t seed)
{
    std::ifstream is(path);
    if (!is) throw Error("cannot open dataset '" + path + "'");
    return format == DatasetFormat::jsonl ? load_jsonl(is) : load_gaussian_csv(is, seed);
}

std::vector<UncertainObject> load_dataset(const std::string& path, std::uint64_t seed)
{
    bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
    return load_dataset(path, csv ? DatasetFormat::gaussian_csv : DatasetFormat::jsonl, seed);
}

}  // namespace udom
