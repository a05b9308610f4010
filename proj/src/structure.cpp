#include "gridbench/structure.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>

namespace gridbench {

namespace {

bool starts_with_vowel_sound(std::string_view word) {
  if (word.empty()) return false;
  const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(word[0])));
  if (std::string_view("aeiou").find(c) != std::string_view::npos) return true;
  return word == "8" || word.starts_with("8 ") || word == "11" || word == "18" || word.starts_with("11 ") ||
         word.starts_with("18 ");
}

std::string with_article(const std::string& phrase) {
  return (starts_with_vowel_sound(phrase) ? "an " : "a ") + phrase;
}

// Joins non-empty words with single spaces.
std::string words(std::initializer_list<std::string> parts) {
  std::string out;
  for (const std::string& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

std::string num(int v) { return std::to_string(v); }

BlockColor primary_color(const ColorScheme& scheme) {
  if (const auto* s = std::get_if<SolidColor>(&scheme)) return s->color;
  if (const auto* h = std::get_if<HalvesColor>(&scheme)) return h->first;
  return std::get<AlternatingColor>(scheme).even;
}

Axis longest_axis(const Dims& d) {
  Axis best = Axis::X;
  for (Axis a : {Axis::Y, Axis::Z}) {
    if (d.extent(a) > d.extent(best)) best = a;
  }
  return best;
}

int component(const Coordinate& c, Axis a) { return a == Axis::X ? c.x : (a == Axis::Y ? c.y : c.z); }

// The two extents of a plane that are larger than one, in axis order.
std::pair<int, int> plane_extents(const Dims& d) {
  if (d.dz == 1) return {d.dx, d.dy};
  if (d.dx == 1) return {d.dy, d.dz};
  return {d.dx, d.dz};
}

std::set<int> shape_numbers(const Shape& s) {
  switch (s.kind) {
    case ShapeKind::Row: return {std::max(s.dims.dx, s.dims.dy)};
    case ShapeKind::Column: return {s.dims.dz};
    case ShapeKind::Tower: return {s.dims.dx, s.dims.dy, s.dims.dz};
    case ShapeKind::Plane: {
      const auto [a, b] = plane_extents(s.dims);
      return {a, b};
    }
    case ShapeKind::Cube: return {s.dims.dx};
  }
  return {};
}

// Noun phrase for a shape; `color` may be empty. `variant` selects among
// equivalent templates.
std::string describe_shape(const Shape& s, const std::string& color, std::uint64_t variant) {
  const bool alt = (variant & 1U) != 0;
  switch (s.kind) {
    case ShapeKind::Row: {
      const int n = std::max(s.dims.dx, s.dims.dy);
      if (alt) return "a row of " + words({num(n), color, "blocks"});
      return with_article(words({color, "row", num(n), "blocks long"}));
    }
    case ShapeKind::Column:
      if (alt) return with_article(words({color, "column", num(s.dims.dz), "blocks high"}));
      return words({num(s.dims.dz), color, "blocks in a column"});
    case ShapeKind::Tower:
      if (alt && s.dims.dx == s.dims.dy) {
        return "a tower of " + words({color, "blocks", num(s.dims.dz), "high and", num(s.dims.dx), "wide"});
      }
      return with_article(words({num(s.dims.dz), "x", num(s.dims.dx), "x", num(s.dims.dy), color, "tower"}));
    case ShapeKind::Plane: {
      const auto [a, b] = plane_extents(s.dims);
      const bool horizontal = s.dims.dz == 1;
      const std::string noun = horizontal ? (alt ? "platform" : "plane") : "wall";
      return with_article(words({s.hollow ? (alt ? "hollow" : "empty") : "", num(a), "x", num(b), color, noun}));
    }
    case ShapeKind::Cube: {
      const std::string a = num(s.dims.dx);
      return with_article(words({a, "x", a, "x", a, color, "cube"}));
    }
  }
  return {};
}

std::string link_phrase(Relation r) { return render_relations(RelationSet{r}, Perspective::Reference); }

std::string describe_scheme(const ColorScheme& scheme, RelationSet& relations) {
  if (const auto* h = std::get_if<HalvesColor>(&scheme)) {
    const std::string a(to_string(h->first));
    const std::string b(to_string(h->second));
    switch (h->axis) {
      case Axis::X:
        relations.insert(Relation::Left);
        relations.insert(Relation::Right);
        return " with " + with_article(a + " left half") + " and " + with_article(b + " right half");
      case Axis::Y:
        relations.insert(Relation::Front);
        relations.insert(Relation::Back);
        return " with " + with_article(a + " front half") + " and " + with_article(b + " back half");
      case Axis::Z:
        relations.insert(Relation::Below);
        return " with " + with_article(a + " half") + " below " + with_article(b + " half");
    }
  }
  if (const auto* alt = std::get_if<AlternatingColor>(&scheme)) {
    return " with alternating " + std::string(to_string(alt->even)) + " and " + std::string(to_string(alt->odd)) +
           " blocks";
  }
  return {};
}

bool boxes_intersect(const Shape& a, const Shape& b) {
  const Coordinate amax = a.max_corner();
  const Coordinate bmax = b.max_corner();
  for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
    if (component(amax, axis) < component(b.anchor, axis) || component(bmax, axis) < component(a.anchor, axis)) {
      return false;
    }
  }
  return true;
}

// Axis on which `a` and `b` touch face to face, if they do.
std::optional<Axis> contact_axis(const Shape& a, const Shape& b) {
  const Coordinate amax = a.max_corner();
  const Coordinate bmax = b.max_corner();
  std::optional<Axis> touching;
  for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
    const int alo = component(a.anchor, axis), ahi = component(amax, axis);
    const int blo = component(b.anchor, axis), bhi = component(bmax, axis);
    if (ahi < blo || bhi < alo) {
      if (touching || !(ahi + 1 == blo || bhi + 1 == alo)) return std::nullopt;
      touching = axis;
    }
  }
  return touching;
}

Shape place_beside(Shape shape, const Shape& base, Axis axis, bool positive) {
  shape.anchor = base.anchor;
  const int offset = positive ? component(base.max_corner(), axis) + 1 : component(base.anchor, axis) - shape.dims.extent(axis);
  switch (axis) {
    case Axis::X: shape.anchor.x = offset; break;
    case Axis::Y: shape.anchor.y = offset; break;
    case Axis::Z: shape.anchor.z = offset; break;
  }
  return shape;
}

std::vector<ColoredBlock> all_blocks(std::span<const Shape> shapes) {
  std::vector<ColoredBlock> out;
  for (const Shape& s : shapes) {
    const auto b = to_blocks(s);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

}  // namespace

void validate(const Shape& s) {
  const Dims& d = s.dims;
  for (int e : {d.dx, d.dy, d.dz}) {
    if (e < 1 || e > kMaxShapeExtent) throw std::invalid_argument("shape extent out of [1, 10]");
  }
  const int units = (d.dx == 1) + (d.dy == 1) + (d.dz == 1);
  bool ok = false;
  switch (s.kind) {
    case ShapeKind::Row: ok = d.dz == 1 && units == 2; break;
    case ShapeKind::Column: ok = d.dx == 1 && d.dy == 1 && d.dz > 1; break;
    case ShapeKind::Tower: ok = units == 0 && !(d.dx == d.dy && d.dy == d.dz); break;
    case ShapeKind::Plane: ok = units == 1; break;
    case ShapeKind::Cube: ok = units == 0 && d.dx == d.dy && d.dy == d.dz; break;
  }
  if (!ok) throw std::invalid_argument("dims do not describe a " + std::string(to_string(s.kind)));
  if (s.hollow) {
    if (s.kind != ShapeKind::Plane) throw std::invalid_argument("only planes may be hollow");
    const auto [a, b] = plane_extents(d);
    if (a < 3 || b < 3) throw std::invalid_argument("hollow plane needs both extents >= 3");
  }
  if (const auto* h = std::get_if<HalvesColor>(&s.colors)) {
    if (h->first == h->second) throw std::invalid_argument("halves need two distinct colors");
    if (d.extent(h->axis) < 2) throw std::invalid_argument("cannot split an extent of 1 into halves");
  }
  if (const auto* a = std::get_if<AlternatingColor>(&s.colors)) {
    if (a->even == a->odd) throw std::invalid_argument("alternating colors must differ");
  }
}

std::vector<ColoredBlock> to_blocks(const Shape& s) {
  validate(s);
  std::vector<ColoredBlock> out;
  out.reserve(static_cast<std::size_t>(s.dims.volume()));
  const Axis longest = longest_axis(s.dims);
  for (int i = 0; i < s.dims.dx; ++i) {
    for (int j = 0; j < s.dims.dy; ++j) {
      for (int k = 0; k < s.dims.dz; ++k) {
        const Coordinate local{i, j, k};
        if (s.hollow) {
          bool rim = false;
          for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
            const int extent = s.dims.extent(a);
            if (extent > 1 && (component(local, a) == 0 || component(local, a) == extent - 1)) rim = true;
          }
          if (!rim) continue;
        }
        BlockColor color = primary_color(s.colors);
        if (const auto* h = std::get_if<HalvesColor>(&s.colors)) {
          color = component(local, h->axis) < s.dims.extent(h->axis) / 2 ? h->first : h->second;
        } else if (const auto* alt = std::get_if<AlternatingColor>(&s.colors)) {
          color = component(local, longest) % 2 == 0 ? alt->even : alt->odd;
        }
        out.push_back({color, s.anchor + local});
      }
    }
  }
  return out;
}

std::string_view to_string(StructureStyle s) {
  switch (s) {
    case StructureStyle::Simple: return "simple";
    case StructureStyle::Cohesive: return "cohesive";
    case StructureStyle::Composite: return "composite";
  }
  return "?";
}

std::optional<StructureStyle> parse_structure_style(std::string_view s) {
  for (StructureStyle st : {StructureStyle::Simple, StructureStyle::Cohesive, StructureStyle::Composite}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

Coordinate doubled_center(std::span<const ColoredBlock> blocks) {
  if (blocks.empty()) throw std::invalid_argument("center of an empty block set");
  Coordinate lo = blocks.front().position;
  Coordinate hi = lo;
  for (const ColoredBlock& b : blocks) {
    lo = {std::min(lo.x, b.position.x), std::min(lo.y, b.position.y), std::min(lo.z, b.position.z)};
    hi = {std::max(hi.x, b.position.x), std::max(hi.y, b.position.y), std::max(hi.z, b.position.z)};
  }
  return lo + hi;
}

std::vector<ShapeLink> composite_relations(std::span<const Shape> shapes) {
  if (shapes.size() != 3) throw InvalidCompositeError("a composite has exactly 3 shapes");
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    for (std::size_t j = i + 1; j < shapes.size(); ++j) {
      if (boxes_intersect(shapes[i], shapes[j])) {
        throw InvalidCompositeError("composite shapes " + std::to_string(i) + " and " + std::to_string(j) +
                                    " overlap");
      }
    }
  }
  const Coordinate base_center = doubled_center(to_blocks(shapes[0]));
  std::vector<ShapeLink> links;
  for (std::size_t i = 1; i < shapes.size(); ++i) {
    const auto axis = contact_axis(shapes[i], shapes[0]);
    if (!axis) throw InvalidCompositeError("shape " + std::to_string(i) + " does not touch shape 0 face to face");
    const RelationSet full = relation_oracle_allo_doubled(Heading::PlusY, base_center, doubled_center(to_blocks(shapes[i])));
    const std::array<Relation, 2> along = *axis == Axis::X   ? std::array{Relation::Left, Relation::Right}
                                          : *axis == Axis::Y ? std::array{Relation::Front, Relation::Back}
                                                             : std::array{Relation::Above, Relation::Below};
    const Relation r = full.contains(along[0]) ? along[0] : along[1];
    links.push_back({i, 0, r});
  }
  return links;
}

Structure assemble_structure(StructureStyle style, std::vector<Shape> shapes, std::uint64_t variant) {
  const std::size_t expected = style == StructureStyle::Composite ? 3 : 1;
  if (shapes.size() != expected) {
    throw std::invalid_argument(std::string(to_string(style)) + " structures have " + std::to_string(expected) +
                                " shape(s)");
  }
  Structure st;
  st.variant = variant;
  st.style = style;
  st.shapes = std::move(shapes);
  st.blocks = all_blocks(st.shapes);
  StructureTerms& terms = st.gold_terms;

  for (std::size_t i = 0; i < st.shapes.size(); ++i) {
    const Shape& s = st.shapes[i];
    at(terms.shapes, s.kind) += 1;
    const std::set<int> nums = shape_numbers(s);
    terms.numbers.insert(nums.begin(), nums.end());
  }

  if (style == StructureStyle::Composite) {
    for (const Shape& s : st.shapes) {
      if (!std::holds_alternative<SolidColor>(s.colors)) {
        throw std::invalid_argument("composite shapes are single-colored");
      }
      terms.colors[primary_color(s.colors)] += 1;
    }
    st.links = composite_relations(st.shapes);
    auto color_word = [&](std::size_t i) { return std::string(to_string(primary_color(st.shapes[i].colors))); };
    std::string text = describe_shape(st.shapes[0], color_word(0), variant);
    for (std::size_t k = 0; k < st.links.size(); ++k) {
      const ShapeLink& link = st.links[k];
      terms.relations.insert(link.relation);
      text += (k == 0 ? " with " : " and ") +
              describe_shape(st.shapes[link.subject], color_word(link.subject), variant >> (k + 1)) + " " +
              link_phrase(link.relation) + " it";
    }
    st.gold_description = text;
  } else {
    const Shape& s = st.shapes[0];
    if (std::holds_alternative<SolidColor>(s.colors)) {
      terms.colors[primary_color(s.colors)] += 1;
      st.gold_description = describe_shape(s, std::string(to_string(primary_color(s.colors))), variant);
    } else {
      if (const auto* h = std::get_if<HalvesColor>(&s.colors)) {
        terms.colors[h->first] += 1;
        terms.colors[h->second] += 1;
      } else {
        const auto& alt = std::get<AlternatingColor>(s.colors);
        terms.colors[alt.even] += 1;
        terms.colors[alt.odd] += 1;
      }
      st.gold_description = describe_shape(s, "", variant) + describe_scheme(s.colors, terms.relations);
    }
  }
  return st;
}

Shape random_shape(ShapeKind kind, BlockColor color, Rng& rng) {
  Shape s;
  s.kind = kind;
  s.colors = SolidColor{color};
  switch (kind) {
    case ShapeKind::Row: {
      const int n = rng.uniform_int(2, kMaxShapeExtent);
      s.dims = rng.coin() ? Dims{n, 1, 1} : Dims{1, n, 1};
      break;
    }
    case ShapeKind::Column:
      s.dims = {1, 1, rng.uniform_int(2, kMaxShapeExtent)};
      break;
    case ShapeKind::Tower: {
      const int a = rng.uniform_int(2, 3);
      const int b = rng.uniform_int(2, 3);
      s.dims = {a, b, rng.uniform_int(std::max(a, b) + 1, kMaxShapeExtent)};
      break;
    }
    case ShapeKind::Plane: {
      const int a = rng.uniform_int(2, 7);
      const int b = rng.uniform_int(2, 7);
      switch (rng.uniform_int(0, 2)) {
        case 0: s.dims = {a, b, 1}; break;
        case 1: s.dims = {1, a, b}; break;
        default: s.dims = {a, 1, b}; break;
      }
      s.hollow = a >= 3 && b >= 3 && rng.uniform_int(0, 2) == 0;
      break;
    }
    case ShapeKind::Cube: {
      const int a = rng.uniform_int(2, 4);
      s.dims = {a, a, a};
      break;
    }
  }
  return s;
}

Structure generate_structure(StructureStyle style, Rng& rng, const StructureConfig& config) {
  for (;;) {
    std::vector<Shape> shapes;
    for (int i = 0; i < 3; ++i) {
      const ShapeKind kind = kAllShapeKinds[rng.index(kAllShapeKinds.size())];
      const BlockColor color = kAllColors[rng.index(kAllColors.size())];
      shapes.push_back(random_shape(kind, color, rng));
    }
    const std::uint64_t variant = rng.next();

    if (style == StructureStyle::Simple) {
      shapes.resize(1);
    } else if (style == StructureStyle::Cohesive) {
      shapes.resize(1);
      Shape& s = shapes[0];
      const BlockColor first = std::get<SolidColor>(s.colors).color;
      BlockColor second = first;
      while (second == first) second = kAllColors[rng.index(kAllColors.size())];
      if (rng.coin()) {
        std::vector<Axis> axes;
        for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
          if (s.dims.extent(a) >= 2) axes.push_back(a);
        }
        s.colors = HalvesColor{first, second, axes[rng.index(axes.size())]};
      } else {
        s.colors = AlternatingColor{first, second};
      }
    } else {
      struct Side {
        Axis axis;
        bool positive;
      };
      std::vector<Side> sides;
      for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
        sides.push_back({a, false});
        sides.push_back({a, true});
      }
      const Side first = sides[rng.index(sides.size())];
      shapes[1] = place_beside(shapes[1], shapes[0], first.axis, first.positive);
      std::vector<Side> open;
      for (const Side& side : sides) {
        if (side.axis == first.axis && side.positive == first.positive) continue;
        if (!boxes_intersect(place_beside(shapes[2], shapes[0], side.axis, side.positive), shapes[1])) {
          open.push_back(side);
        }
      }
      const Side second = open[rng.index(open.size())];
      shapes[2] = place_beside(shapes[2], shapes[0], second.axis, second.positive);
    }

    int total = 0;
    for (const Shape& s : shapes) total += static_cast<int>(to_blocks(s).size());
    if (total < config.min_blocks || total > config.max_blocks) continue;
    return assemble_structure(style, std::move(shapes), variant);
  }
}

std::string_view to_string(BlockFormat f) {
  switch (f) {
    case BlockFormat::Plain: return "plain";
    case BlockFormat::Dict: return "dict";
    case BlockFormat::Set: return "set";
    case BlockFormat::Text: return "text";
  }
  return "?";
}

std::optional<BlockFormat> parse_block_format(std::string_view s) {
  for (BlockFormat f : {BlockFormat::Plain, BlockFormat::Dict, BlockFormat::Set, BlockFormat::Text}) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

std::string serialize(std::span<const ColoredBlock> blocks, BlockFormat format) {
  if (blocks.empty()) throw std::invalid_argument("cannot serialize an empty block list");
  std::ostringstream out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const ColoredBlock& b = blocks[i];
    const std::string_view color = to_string(b.color);
    const Coordinate& p = b.position;
    switch (format) {
      case BlockFormat::Plain:
        if (i > 0) out << '\n';
        out << color << ' ' << p.x << ' ' << p.y << ' ' << p.z;
        break;
      case BlockFormat::Set:
        out << (i == 0 ? "{" : ", ") << '(' << color << ", " << p.x << ", " << p.y << ", " << p.z << ')';
        break;
      case BlockFormat::Dict:
        out << (i == 0 ? "{" : ", ") << "(color = " << color << ", x = " << p.x << ", y = " << p.y
            << ", z = " << p.z << ')';
        break;
      case BlockFormat::Text:
        if (i > 0) out << (i + 1 == blocks.size() ? ", and " : ", ");
        out << "a " << color << " block at (" << p.x << ", " << p.y << ", " << p.z << ')';
        break;
    }
  }
  if (format == BlockFormat::Set || format == BlockFormat::Dict) out << '}';
  return out.str();
}

std::vector<ColoredBlock> parse_blocks(std::string_view text, BlockFormat format) {
  static const std::regex plain(R"(^\s*([A-Za-z]+)\s+(-?\d+)\s+(-?\d+)\s+(-?\d+)\s*$)");
  static const std::regex set(R"(\(\s*([A-Za-z]+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\))");
  static const std::regex dict(
      R"(\(\s*color\s*[=:]\s*([A-Za-z]+)\s*,\s*x\s*[=:]\s*(-?\d+)\s*,\s*y\s*[=:]\s*(-?\d+)\s*,\s*z\s*[=:]\s*(-?\d+)\s*\))");
  static const std::regex prose(
      R"(\ban?\s+([A-Za-z]+)\s+block\s+at\s+\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\))");

  std::vector<ColoredBlock> out;
  auto add = [&](const std::smatch& m) {
    const auto color = parse_color(m[1].str());
    if (!color) throw std::invalid_argument("unknown block color '" + m[1].str() + "'");
    out.push_back({*color, {std::stoi(m[2].str()), std::stoi(m[3].str()), std::stoi(m[4].str())}});
  };

  const std::string s(text);
  if (format == BlockFormat::Plain) {
    std::istringstream in(s);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::smatch m;
      if (!std::regex_match(line, m, plain)) {
        throw std::invalid_argument("malformed plain block on line " + std::to_string(number));
      }
      add(m);
    }
  } else {
    const std::regex& re = format == BlockFormat::Set ? set : (format == BlockFormat::Dict ? dict : prose);
    for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator(); ++it) add(*it);
  }
  if (out.empty()) throw std::invalid_argument("no blocks found in " + std::string(to_string(format)) + " text");
  return out;
}

ShapeCreditTable::ShapeCreditTable() {
  for (ShapeKind k : kAllShapeKinds) set(k, k, 1.0);
  set(ShapeKind::Row, ShapeKind::Column, 0.6);
  set(ShapeKind::Column, ShapeKind::Tower, 0.6);
  set(ShapeKind::Tower, ShapeKind::Cube, 0.5);
  set(ShapeKind::Tower, ShapeKind::Plane, 0.1);
  set(ShapeKind::Plane, ShapeKind::Cube, 0.1);
  set(ShapeKind::Row, ShapeKind::Tower, 0.2);
}

double ShapeCreditTable::credit(ShapeKind a, ShapeKind b) const {
  return credit_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

void ShapeCreditTable::set(ShapeKind a, ShapeKind b, double value) {
  credit_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = value;
  credit_[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = value;
}

const ShapeCreditTable& ShapeCreditTable::defaults() {
  static const ShapeCreditTable table;
  return table;
}

StructureTerms terms_from_text(std::string_view text, const SynonymTable& table) {
  StructureTerms t;
  t.relations = extract_relations(text, table);
  for (BlockColor c : kAllColors) {
    if (const int n = count_color_terms(text, c, table); n > 0) t.colors[c] = n;
  }
  t.shapes = extract_shape_mentions(text, table);
  t.numbers = extract_numbers(text, table);
  return t;
}

double color_overlap(std::string_view predicted_text, const StructureTerms& gold, const SynonymTable& table) {
  int lo = 0;
  int hi = 0;
  for (BlockColor c : kAllColors) {
    const int p = count_color_terms(predicted_text, c, table);
    const auto it = gold.colors.find(c);
    const int g = it == gold.colors.end() ? 0 : it->second;
    lo += std::min(p, g);
    hi += std::max(p, g);
  }
  return hi == 0 ? 100.0 : 100.0 * lo / hi;
}

namespace {

struct PairSearch {
  const ShapeCreditTable& credit;
  std::vector<ShapeKind> gold_left;
  ShapeCounts predicted_left{};
  double best_credit = 0.0;
  int best_pairs = 0;
  double best_ratio = -1.0;
  int exact = 0;
  int total = 0;  // |P| + |G|

  void run(std::size_t i, double credit_sum, int pairs) {
    if (i == gold_left.size()) {
      const int uni = total - exact - pairs;
      const double ratio = uni == 0 ? 1.0 : (exact + credit_sum) / uni;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best_credit = credit_sum;
        best_pairs = pairs;
      }
      return;
    }
    run(i + 1, credit_sum, pairs);
    for (ShapeKind k : kAllShapeKinds) {
      const double c = credit.credit(gold_left[i], k);
      if (at(predicted_left, k) == 0 || c <= 0.0) continue;
      at(predicted_left, k) -= 1;
      run(i + 1, credit_sum + c, pairs + 1);
      at(predicted_left, k) += 1;
    }
  }
};

}  // namespace

double shape_overlap(const ShapeCounts& predicted, const ShapeCounts& gold, const ShapeCreditTable& credit) {
  PairSearch search{credit, {}};
  for (ShapeKind k : kAllShapeKinds) {
    const int p = at(predicted, k);
    const int g = at(gold, k);
    const int m = std::min(p, g);
    search.exact += m;
    search.total += p + g;
    at(search.predicted_left, k) = p - m;
    for (int i = m; i < g; ++i) search.gold_left.push_back(k);
  }
  if (search.total == 0) return 100.0;
  // Exhaustive pairing of leftover gold shapes to leftover predictions; gold
  // structures hold at most three shapes so the search stays tiny.
  search.run(0, 0.0, 0);
  return 100.0 * search.best_ratio;
}

double shape_overlap(std::string_view predicted_text, const StructureTerms& gold, const SynonymTable& table,
                     const ShapeCreditTable& credit) {
  return shape_overlap(extract_shape_mentions(predicted_text, table), gold.shapes, credit);
}

double numeric_overlap(std::string_view predicted_text, const StructureTerms& gold, const SynonymTable& table) {
  const std::set<int> predicted = extract_numbers(predicted_text, table);
  std::set<int> uni = predicted;
  uni.insert(gold.numbers.begin(), gold.numbers.end());
  if (uni.empty()) return 100.0;
  int common = 0;
  for (int n : predicted) common += gold.numbers.count(n) ? 1 : 0;
  return 100.0 * common / static_cast<double>(uni.size());
}

StructureScore score_structure(std::string_view predicted_text, const StructureTerms& gold,
                               const SynonymTable& table) {
  return {spatial_overlap(extract_relations(predicted_text, table), gold.relations),
          color_overlap(predicted_text, gold, table), shape_overlap(predicted_text, gold, table),
          numeric_overlap(predicted_text, gold, table)};
}

}  // namespace gridbench
