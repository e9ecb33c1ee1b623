#include "snapcap/scenes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "snapcap/rng.hpp"
#include "snapcap/tensor_io.hpp"

namespace fs = std::filesystem;

namespace snapcap::scenes {

const char* to_string(Shape s) {
    switch (s) {
        case Shape::circle: return "circle";
        case Shape::square: return "square";
        case Shape::triangle: return "triangle";
    }
    return "?";
}

const char* to_string(Color c) {
    switch (c) {
        case Color::red: return "red";
        case Color::green: return "green";
        case Color::blue: return "blue";
        case Color::white: return "white";
    }
    return "?";
}

const char* to_string(Direction d) {
    switch (d) {
        case Direction::left: return "left";
        case Direction::right: return "right";
        case Direction::up: return "up";
        case Direction::down: return "down";
    }
    return "?";
}

std::optional<Shape> shape_from(const std::string& s) {
    if (s == "circle") return Shape::circle;
    if (s == "square") return Shape::square;
    if (s == "triangle") return Shape::triangle;
    return std::nullopt;
}

std::optional<Color> color_from(const std::string& s) {
    if (s == "red") return Color::red;
    if (s == "green") return Color::green;
    if (s == "blue") return Color::blue;
    if (s == "white") return Color::white;
    return std::nullopt;
}

std::optional<Direction> direction_from(const std::string& s) {
    if (s == "left") return Direction::left;
    if (s == "right") return Direction::right;
    if (s == "up") return Direction::up;
    if (s == "down") return Direction::down;
    return std::nullopt;
}

double gray_level(Color c) {
    switch (c) {
        case Color::red: return 0.85;
        case Color::green: return 0.60;
        case Color::blue: return 0.35;
        case Color::white: return 1.00;
    }
    return 1.0;
}

namespace {

bool inside_shape(Shape shape, double dy, double dx, double half) {
    switch (shape) {
        case Shape::circle:
            return dy * dy + dx * dx <= half * half;
        case Shape::square:
            return std::abs(dy) <= half && std::abs(dx) <= half;
        case Shape::triangle: {
            // upward triangle: apex (0,-half), base corners (+-half, +half)
            if (dy < -half || dy > half) return false;
            const double span = half * (dy + half) / (2.0 * half);
            return std::abs(dx) <= span;
        }
    }
    return false;
}

// 4x4 supersampled coverage of one pixel (row r, col c) against the shape
// centered at (cy, cx).
double pixel_coverage(Shape shape, double cy, double cx, double half, int64_t r,
                      int64_t c) {
    int hits = 0;
    for (int sy = 0; sy < 4; ++sy) {
        const double y = double(r) + (sy + 0.5) / 4.0;
        for (int sx = 0; sx < 4; ++sx) {
            const double x = double(c) + (sx + 0.5) / 4.0;
            if (inside_shape(shape, y - cy, x - cx, half)) ++hits;
        }
    }
    return double(hits) / 16.0;
}

void direction_step(Direction d, double& dy, double& dx) {
    dy = 0.0;
    dx = 0.0;
    switch (d) {
        case Direction::left: dx = -1.0; break;
        case Direction::right: dx = 1.0; break;
        case Direction::up: dy = -1.0; break;
        case Direction::down: dy = 1.0; break;
    }
}

} // namespace

std::vector<cs::VideoClip> render_scene(const SceneSpec& spec, int64_t t, int64_t b,
                                        int64_t h, int64_t w) {
    if (t < 1 || b < 1 || h < 1 || w < 1) {
        throw std::invalid_argument("render_scene: dimensions must be >= 1");
    }
    if (spec.speed < 0.0 || spec.size <= 0.0) {
        throw std::invalid_argument("render_scene: invalid speed/size");
    }
    double dy, dx;
    direction_step(spec.direction, dy, dx);
    const double half = spec.size / 2.0;
    const double gray = gray_level(spec.color);
    const int64_t n_frames = t * b;

    // reject specs whose shape ever leaves the frame entirely
    for (int64_t n = 0; n < n_frames; ++n) {
        const double cy = spec.start_row + dy * spec.speed * double(n);
        const double cx = spec.start_col + dx * spec.speed * double(n);
        if (cy + half < 0.0 || cy - half > double(h) || cx + half < 0.0 ||
            cx - half > double(w)) {
            throw std::invalid_argument(
                "render_scene: shape leaves the frame at step " + std::to_string(n));
        }
    }

    std::vector<cs::VideoClip> clips(static_cast<size_t>(t));
    for (int64_t ti = 0; ti < t; ++ti) {
        clips[size_t(ti)].frames = Tensor({b, h, w});
        Tensor& frames = clips[size_t(ti)].frames;
#pragma omp parallel for schedule(static)
        for (int64_t k = 0; k < b; ++k) {
            const int64_t n = ti * b + k;
            const double cy = spec.start_row + dy * spec.speed * double(n);
            const double cx = spec.start_col + dx * spec.speed * double(n);
            const int64_t r0 = std::max<int64_t>(0, int64_t(std::floor(cy - half)) - 1);
            const int64_t r1 = std::min<int64_t>(h - 1, int64_t(std::ceil(cy + half)) + 1);
            const int64_t c0 = std::max<int64_t>(0, int64_t(std::floor(cx - half)) - 1);
            const int64_t c1 = std::min<int64_t>(w - 1, int64_t(std::ceil(cx + half)) + 1);
            for (int64_t r = r0; r <= r1; ++r) {
                for (int64_t c = c0; c <= c1; ++c) {
                    const double cov = pixel_coverage(spec.shape, cy, cx, half, r, c);
                    if (cov > 0.0) frames.at(k, r, c) = gray * cov;
                }
            }
        }
    }
    return clips;
}

std::string caption_of(const SceneSpec& spec) {
    std::string s = "a ";
    s += to_string(spec.color);
    s += " ";
    s += to_string(spec.shape);
    if (spec.speed == 0.0) {
        s += " stays still";
    } else {
        s += " moves ";
        s += to_string(spec.direction);
    }
    return s;
}

namespace {
std::vector<std::string> split_words(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}
} // namespace

std::optional<CaptionSlots> parse_caption(const std::string& caption) {
    const auto words = split_words(caption);
    if (words.size() != 5 || words[0] != "a") return std::nullopt;
    if (!color_from(words[1]) || !shape_from(words[2])) return std::nullopt;
    if (words[3] == "moves" && direction_from(words[4])) {
        return CaptionSlots{words[1], words[2], words[4]};
    }
    if (words[3] == "stays" && words[4] == "still") {
        return CaptionSlots{words[1], words[2], "still"};
    }
    return std::nullopt;
}

namespace {
// 24 word tokens; the tail words never occur in generated captions but keep
// the decoder's output space from being trivial.
const std::vector<std::string> kDefaultWords = {
    "<pad>",  "<bos>",  "<eos>",  "a",     "red",    "green",   "blue",
    "white",  "circle", "square", "triangle", "moves", "stays", "still",
    "left",   "right",  "up",     "down",  "the",    "fast",    "slow",
    "big",    "small",  "bright", "dark",  "object", "spins"};
} // namespace

Vocabulary::Vocabulary() : words_(kDefaultWords) {}

Vocabulary::Vocabulary(std::vector<std::string> words) : words_(std::move(words)) {
    if (words_.size() < 3 || words_[0] != "<pad>" || words_[1] != "<bos>" ||
        words_[2] != "<eos>") {
        throw std::invalid_argument("vocabulary: first tokens must be <pad>/<bos>/<eos>");
    }
}

int Vocabulary::id_of(const std::string& word) const {
    for (size_t i = 0; i < words_.size(); ++i) {
        if (words_[i] == word) return static_cast<int>(i);
    }
    throw std::invalid_argument("vocabulary: unknown word '" + word + "'");
}

std::vector<int> Vocabulary::encode(const std::string& caption) const {
    std::vector<int> ids{bos_id()};
    for (const auto& w : split_words(caption)) ids.push_back(id_of(w));
    ids.push_back(eos_id());
    return ids;
}

std::string Vocabulary::decode(const std::vector<int>& ids) const {
    std::string out;
    for (int id : ids) {
        if (id == bos_id() || id == pad_id()) continue;
        if (id == eos_id()) break;
        if (!out.empty()) out += " ";
        out += word(id);
    }
    return out;
}

std::vector<const SampleEntry*> DatasetManifest::split(const std::string& name) const {
    std::vector<const SampleEntry*> out;
    for (const auto& s : samples) {
        if (s.split == name) out.push_back(&s);
    }
    return out;
}

SceneSpec sample_spec(uint64_t seed, const DatasetGeometry& geom) {
    Rng rng(seed);
    SceneSpec spec;
    spec.seed = seed;
    spec.shape = static_cast<Shape>(rng.uniform_int(0, 2));
    spec.color = static_cast<Color>(rng.uniform_int(0, 3));
    spec.size = rng.uniform(10.0, 18.0);
    const double half = spec.size / 2.0 + 1.0;

    // movement uniform over {still, left, right, up, down}
    const int64_t move = rng.uniform_int(0, 4);
    if (move == 0) {
        spec.speed = 0.0;
        spec.direction = Direction::left;
        spec.start_row = rng.uniform(half, double(geom.h) - half);
        spec.start_col = rng.uniform(half, double(geom.w) - half);
        return spec;
    }
    spec.direction = static_cast<Direction>(move - 1);
    const bool horizontal =
        spec.direction == Direction::left || spec.direction == Direction::right;
    const double extent = double(horizontal ? geom.w : geom.h);
    const double usable = extent - 2.0 * half;
    const int64_t n_frames = geom.t * geom.b;
    const double max_speed = usable / double(n_frames - 1);
    spec.speed = max_speed * rng.uniform(0.35, 0.95);
    const double travel = spec.speed * double(n_frames - 1);

    double lo_move, hi_move; // valid start range along the motion axis
    if (spec.direction == Direction::left || spec.direction == Direction::up) {
        lo_move = half + travel;
        hi_move = extent - half;
    } else {
        lo_move = half;
        hi_move = extent - half - travel;
    }
    const double along = rng.uniform(lo_move, hi_move);
    const double cross_extent = double(horizontal ? geom.h : geom.w);
    const double cross = rng.uniform(half, cross_extent - half);
    spec.start_row = horizontal ? cross : along;
    spec.start_col = horizontal ? along : cross;
    return spec;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string sample_line(const SampleEntry& e) {
    std::ostringstream out;
    out << "sample " << e.split << " " << e.clip_path << " " << to_string(e.spec.shape)
        << " " << to_string(e.spec.color) << " " << to_string(e.spec.direction) << " "
        << fmt_double(e.spec.speed) << " " << fmt_double(e.spec.start_row) << " "
        << fmt_double(e.spec.start_col) << " " << fmt_double(e.spec.size) << " "
        << e.spec.seed << " " << e.caption;
    return out.str();
}

} // namespace

void write_manifest(const DatasetManifest& m, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << "snapcap-dataset 1\n";
    out << "seed " << m.seed << "\n";
    out << "geometry " << m.t << " " << m.b << " " << m.h << " " << m.w << "\n";
    out << "vocab " << m.vocab_words.size();
    for (const auto& w : m.vocab_words) out << " " << w;
    out << "\n";
    out << "samples " << m.samples.size() << "\n";
    for (const auto& e : m.samples) out << sample_line(e) << "\n";
    if (!out) throw std::runtime_error("short manifest write: " + path);
}

DatasetManifest read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read manifest: " + path);
    DatasetManifest m;
    m.root = fs::path(path).parent_path().string();
    std::string line;
    if (!std::getline(in, line) || line.rfind("snapcap-dataset", 0) != 0) {
        throw std::runtime_error("not a dataset manifest: " + path);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "seed") {
            ls >> m.seed;
        } else if (key == "geometry") {
            ls >> m.t >> m.b >> m.h >> m.w;
        } else if (key == "vocab") {
            size_t n = 0;
            ls >> n;
            m.vocab_words.resize(n);
            for (auto& w : m.vocab_words) ls >> w;
        } else if (key == "samples") {
            // count line; entries follow
        } else if (key == "sample") {
            SampleEntry e;
            std::string shape, color, dir;
            ls >> e.split >> e.clip_path >> shape >> color >> dir >> e.spec.speed >>
                e.spec.start_row >> e.spec.start_col >> e.spec.size >> e.spec.seed;
            auto sh = shape_from(shape);
            auto co = color_from(color);
            auto di = direction_from(dir);
            if (!sh || !co || !di || !ls) {
                throw std::runtime_error("bad sample line in manifest: " + line);
            }
            e.spec.shape = *sh;
            e.spec.color = *co;
            e.spec.direction = *di;
            std::string word, caption;
            while (ls >> word) {
                if (!caption.empty()) caption += " ";
                caption += word;
            }
            e.caption = caption;
            m.samples.push_back(std::move(e));
        } else {
            throw std::runtime_error("unknown manifest key: " + key);
        }
    }
    return m;
}

DatasetManifest build_dataset(int64_t n_train, int64_t n_val, int64_t n_test,
                              uint64_t seed, const std::string& out_dir,
                              const DatasetGeometry& geom, bool overwrite) {
    if (n_train < 1 || n_val < 1 || n_test < 1) {
        throw std::invalid_argument("build_dataset: split sizes must be >= 1");
    }
    const fs::path root(out_dir);
    const fs::path manifest_path = root / "manifest.txt";
    if (fs::exists(manifest_path) && !overwrite) {
        throw std::runtime_error("dataset already exists (pass overwrite): " +
                                 manifest_path.string());
    }
    std::error_code ec;
    fs::create_directories(root / "clips", ec);
    if (ec) throw std::runtime_error("cannot create dataset directory: " + out_dir);

    DatasetManifest m;
    m.seed = seed;
    m.t = geom.t;
    m.b = geom.b;
    m.h = geom.h;
    m.w = geom.w;
    m.vocab_words = Vocabulary().words();
    m.root = root.string();

    const int64_t total = n_train + n_val + n_test;
    for (int64_t i = 0; i < total; ++i) {
        SampleEntry e;
        e.split = i < n_train ? "train" : (i < n_train + n_val ? "val" : "test");
        const uint64_t sseed = mix_seed(seed, uint64_t(i) + 1);
        e.spec = sample_spec(sseed, geom);
        e.caption = caption_of(e.spec);
        char name[64];
        std::snprintf(name, sizeof(name), "clips/%s_%05lld.ten", e.split.c_str(),
                      static_cast<long long>(i));
        e.clip_path = name;

        const auto clips = render_scene(e.spec, geom.t, geom.b, geom.h, geom.w);
        Tensor video({geom.t, geom.b, geom.h, geom.w});
        const int64_t clip_elems = geom.b * geom.h * geom.w;
        for (int64_t ti = 0; ti < geom.t; ++ti) {
            std::copy(clips[size_t(ti)].frames.data(),
                      clips[size_t(ti)].frames.data() + clip_elems,
                      video.data() + ti * clip_elems);
        }
        write_tensor((root / e.clip_path).string(), video);
        m.samples.push_back(std::move(e));
    }
    write_manifest(m, manifest_path.string());
    return m;
}

Tensor load_video(const DatasetManifest& m, const SampleEntry& e) {
    const fs::path p = fs::path(m.root) / e.clip_path;
    Tensor video = read_tensor(p.string());
    if (video.rank() != 4 || video.dim(0) != m.t || video.dim(1) != m.b ||
        video.dim(2) != m.h || video.dim(3) != m.w) {
        throw std::runtime_error("video tensor shape mismatch: " + p.string());
    }
    return video;
}

std::vector<cs::VideoClip> clips_of(const Tensor& video) {
    const int64_t t = video.dim(0);
    const int64_t clip_elems = video.dim(1) * video.dim(2) * video.dim(3);
    std::vector<cs::VideoClip> clips(static_cast<size_t>(t));
    for (int64_t ti = 0; ti < t; ++ti) {
        clips[size_t(ti)].frames = Tensor({video.dim(1), video.dim(2), video.dim(3)});
        std::copy(video.data() + ti * clip_elems, video.data() + (ti + 1) * clip_elems,
                  clips[size_t(ti)].frames.data());
    }
    return clips;
}

} // namespace snapcap::scenes
