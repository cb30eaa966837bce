// SVG rendering and JSON persistence shared by the command-line tool and the
// acceptance checks.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "penrose/duality.hpp"
#include "penrose/expansive.hpp"
#include "penrose/wang.hpp"

namespace penrose {

enum class Layer { Gridlines, Rhombs, WangIds, Tetragons, StripOverlay };
std::optional<Layer> parse_layer(std::string_view name);
const char* layer_name(Layer l);

struct Style {
  double scale = 24;    // pixels per unit length
  double stroke = 0.6;  // pixels
};

// Layers render back to front in list order.  The window must be nonempty.
struct SceneSpec {
  std::vector<Layer> layers;
  Window window;
  Style style;
};

struct SceneData {
  std::optional<PentagridParams> grid;  // gridlines
  std::vector<RhombTile> tiles;         // rhombs
  std::vector<PolygonDual> open;        // unfilled hexagons and decagons, drawn with the rhombs
  std::optional<WangField> field;       // wangids, tetragons
  std::optional<PentagridParams> field_params;
  std::optional<Strip> strip;           // strip-overlay
};

class SceneError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string render_svg(const SceneSpec& scene, const SceneData& data);

// Unfilled, + and - resolutions of a worm side by side.
std::string render_worm_triptych(const PentagridParams& u, const Window& w, const Style& style = {});

// Fill colors, fixed tables so output is byte-stable.
const char* family_color(int i, int j);
std::string wang_color(int id);

// JSON, every document versioned with "schema": 1.
inline constexpr int kSchema = 1;
nlohmann::json tile_json(const RhombTile& t);
nlohmann::json tiles_json(const std::vector<RhombTile>& tiles);
nlohmann::json crossing_json(const Crossing& c);
nlohmann::json error_json(const std::string& kind, const std::string& message);
nlohmann::json qr5_json(const Qr5& x);  // {"exact": "...", "value": double}

// Comma-separated Qr5 literals.
std::vector<Qr5> parse_qr5_list(std::string_view text);

}  // namespace penrose
