#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "snapcap/cs_sim.hpp"
#include "snapcap/tensor.hpp"

namespace snapcap::scenes {

enum class Shape { circle, square, triangle };
enum class Color { red, green, blue, white };
enum class Direction { left, right, up, down };

const char* to_string(Shape s);
const char* to_string(Color c);
const char* to_string(Direction d);
std::optional<Shape> shape_from(const std::string& s);
std::optional<Color> color_from(const std::string& s);
std::optional<Direction> direction_from(const std::string& s);

/// Gray level a color name renders at; levels are far apart so the color
/// slot survives compression of the grayscale measurement.
double gray_level(Color c);

/// One moving-shape scene. speed is pixels per frame; 0 keeps the shape
/// static. start_* give the shape center in pixel coordinates.
struct SceneSpec {
    Shape shape = Shape::circle;
    Color color = Color::white;
    Direction direction = Direction::left;
    double speed = 0.0;
    double start_row = 0.0;
    double start_col = 0.0;
    double size = 12.0; // diameter / side length in pixels
    uint64_t seed = 0;
};

/// Renders t clips of b frames each at h x w, anti-aliased, advancing the
/// shape `speed` pixels per frame. Throws if the shape ever leaves the
/// frame entirely.
std::vector<cs::VideoClip> render_scene(const SceneSpec& spec, int64_t t, int64_t b,
                                        int64_t h, int64_t w);

/// "a {color} {shape} moves {direction}", or "a {color} {shape} stays still"
/// when speed is zero.
std::string caption_of(const SceneSpec& spec);

/// Slots recovered from a caption. movement is a direction name or "still".
struct CaptionSlots {
    std::string color;
    std::string shape;
    std::string movement;
};
std::optional<CaptionSlots> parse_caption(const std::string& caption);

/// Fixed token table: ids 0..2 are <pad>/<bos>/<eos>, the rest word tokens.
class Vocabulary {
public:
    Vocabulary();
    explicit Vocabulary(std::vector<std::string> words);

    int size() const { return static_cast<int>(words_.size()); }
    int pad_id() const { return 0; }
    int bos_id() const { return 1; }
    int eos_id() const { return 2; }
    const std::string& word(int id) const { return words_.at(static_cast<size_t>(id)); }
    int id_of(const std::string& word) const; // throws on unknown word
    const std::vector<std::string>& words() const { return words_; }

    /// BOS + word ids + EOS.
    std::vector<int> encode(const std::string& caption) const;
    /// Words between BOS and EOS joined by spaces.
    std::string decode(const std::vector<int>& ids) const;

private:
    std::vector<std::string> words_;
};

/// Token-id sequence with BOS at the front and a terminal EOS.
struct CaptionTokens {
    std::vector<int> ids;
    int length() const { return static_cast<int>(ids.size()); }
};

struct SampleEntry {
    std::string split; // train | val | test
    std::string clip_path; // relative to the dataset root
    SceneSpec spec;
    std::string caption;
};

struct DatasetManifest {
    uint64_t seed = 0;
    int64_t t = 8, b = 8, h = 64, w = 64;
    std::vector<std::string> vocab_words;
    std::vector<SampleEntry> samples;
    std::string root; // directory the manifest was loaded from / written to

    std::vector<const SampleEntry*> split(const std::string& name) const;
};

struct DatasetGeometry {
    int64_t t = 8, b = 8, h = 64, w = 64;
};

/// Draws specs uniformly over valid scenes, renders and writes one video
/// tensor [t,b,h,w] per sample plus a manifest. Refuses to clobber an
/// existing dataset unless overwrite is set.
DatasetManifest build_dataset(int64_t n_train, int64_t n_val, int64_t n_test,
                              uint64_t seed, const std::string& out_dir,
                              const DatasetGeometry& geom = {}, bool overwrite = false);

void write_manifest(const DatasetManifest& m, const std::string& path);
DatasetManifest read_manifest(const std::string& path);

/// Loads a sample's video tensor [t,b,h,w] and slices it into t clips.
Tensor load_video(const DatasetManifest& m, const SampleEntry& e);
std::vector<cs::VideoClip> clips_of(const Tensor& video);

/// Uniformly sampled valid spec for the given geometry.
SceneSpec sample_spec(uint64_t seed, const DatasetGeometry& geom);

} // namespace snapcap::scenes
