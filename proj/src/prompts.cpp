#include "gridbench/prompts.hpp"

#include <array>
#include <sstream>

#include "gridbench/parsing.hpp"

namespace gridbench {

namespace {

constexpr std::string_view kIntro2D =
    "You are in a 2D environment with (x, y) coordinates set up like a standard horizontal Cartesian plane. You "
    "will start at the origin (0, 0), which is at the center of this grid. You are currently facing the positive "
    "y direction, with the positive x direction to your right.";
constexpr std::string_view kIntro3D =
    "You are in a 3D environment with (x, y, z) coordinates set up like a standard Cartesian plane. The x and y "
    "dimensions are horizontal, while the z dimension is the vertical component. You will start at the origin "
    "(0, 0, 0), which is at the center of this grid. You are currently facing the positive y direction, with the "
    "positive x direction to your right.";
constexpr std::string_view kEgoRule =
    " However, when you move in a direction you must turn to face that direction, rotating your frame of "
    "reference. For example, if you move left, you will rotate 90 degrees and be facing the negative x direction "
    "with positive y to your right.";
constexpr std::string_view kCardinalRule =
    " The directions are fixed to the grid and never turn with you: forward always increases y, backward "
    "decreases y, right increases x and left decreases x.";
constexpr std::string_view kCardinalRule3D = " Up increases z and down decreases z.";

constexpr std::string_view kCard2EgoIntro =
    "You are on a 2D grid and will be given a path using cardinal directions (North, East, South, West) that you "
    "need to convert into egocentric directions (left, right, forward, backward). Keep in mind that to move in a "
    "cardinal direction, you must turn to face it. This means that the egocentric instructions will not map "
    "directly to cardinal ones, but change depending on the direction you last moved. E.g. if you just moved "
    "East and then want to move South, then the egocentric instruction is to move right, since South is to your "
    "right if you're facing East.";

constexpr std::string_view kStructureIntro =
    "You are in a 3D grid environment with (x, y, z) coordinates set up like a standard Cartesian plane. The x "
    "and y dimensions are horizontal, while the z dimension is the vertical component. Your task is to describe a "
    "set of blocks to someone without mentioning coordinates or axes, instead describe the structures as a whole. "
    "Format your answer with [ANS] tags like so: there are [ANS] 6 orange blocks in a column [/ANS]. \n\n";

constexpr std::string_view kComboIntro =
    "You are in a 3D environment with (x, y, z) coordinates set up like a standard Cartesian plane. The x and y "
    "dimensions are horizontal, while the z dimension is the vertical component. You are at the origin (0, 0, 0), "
    "which is at the center of this grid, facing the positive y direction, with the positive x direction to your "
    "right. However, when you move in a direction you must turn to face that direction, rotating your frame of "
    "reference. For example, if you move left, you will rotate 90 degrees counterclockwise and be facing the "
    "negative x direction with positive y to your right. Format your final answer with [ANS] tags like so: the "
    "cube is [ANS] above and to the left of [/ANS] the tower.";

std::string steps_word(int n) { return std::to_string(n) + (n == 1 ? " step" : " steps"); }

std::string ordinal(std::size_t k) {
  static const std::array<const char*, 10> words{"first", "second", "third",   "fourth", "fifth",
                                                 "sixth", "seventh", "eighth", "ninth",  "tenth"};
  return k >= 1 && k <= words.size() ? words[k - 1] : "next";
}

// "positive x", "negative z", ...
std::string axis_words(const Coordinate& unit) {
  if (unit.x != 0) return unit.x > 0 ? "positive x" : "negative x";
  if (unit.y != 0) return unit.y > 0 ? "positive y" : "negative y";
  return unit.z > 0 ? "positive z" : "negative z";
}

std::string heading_words(Heading h) { return std::string(axis_phrase(h)); }
std::string right_words(Heading h) { return axis_words(world_axis(h, MoveDirection::Right)); }

std::string direction_word(MoveDirection d) {
  return d == MoveDirection::Backward ? "back" : std::string(to_string(d));
}

// "a red block at (1, 2, 3), a blue ..., and a green block at (...)".
std::string listing_text(std::span<const ColoredBlock> blocks, Dimensionality dim) {
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i > 0) out += i + 1 == blocks.size() ? ", and " : ", ";
    const std::string color(to_string(blocks[i].color));
    out += (color.front() == 'o' ? "an " : "a ") + color + " block at " + to_string(blocks[i].position, dim);
  }
  return out;
}

// Value of a doubled coordinate component, e.g. 5 -> "2.5".
std::string half(int doubled) {
  std::string s = std::to_string(doubled / 2);
  if (doubled % 2 != 0) s = (doubled < 0 && doubled / 2 == 0 ? "-" : "") + s + ".5";
  return s;
}

int component(const Coordinate& c, int axis) { return axis == 0 ? c.x : (axis == 1 ? c.y : c.z); }
constexpr std::array<const char*, 3> kAxisNames{"x", "y", "z"};

std::vector<Coordinate> waypoints_of(const NavInstance& inst) {
  std::vector<Coordinate> w{Coordinate{}};
  w.insert(w.end(), inst.intermediates.begin(), inst.intermediates.end());
  return w;
}

std::string waypoint_sentence_exemplar(const NavInstance& inst, Dimensionality dim) {
  const auto w = waypoints_of(inst);
  std::string out = "You start at " + to_string(w.front(), dim);
  for (std::size_t i = 1; i < w.size(); ++i) {
    out += i + 1 == w.size() ? (w.size() == 2 ? " and end at " : ", and end at ") : ", go to ";
    out += to_string(w[i], dim);
  }
  return out + ". Describe the path that traverses the provided coordinates.";
}

std::string waypoint_sentence(const NavInstance& inst, Dimensionality dim) {
  const auto w = waypoints_of(inst);
  std::string out = "Start at " + to_string(w.front(), dim) + ".";
  for (std::size_t i = 1; i < w.size(); ++i) {
    out += (i + 1 == w.size() ? " End at " : " Go to ") + to_string(w[i], dim) + ".";
  }
  return out;
}

std::string compass_path(std::span<const CardinalStep> steps) {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::string(to_string(steps[i].compass)) + " " + std::to_string(steps[i].length);
  }
  return out;
}

NavInstance fixed_instructor_exemplar(FrameMode mode, Dimensionality dim) {
  const std::vector<Coordinate> w = dim == Dimensionality::TwoD
                                        ? std::vector<Coordinate>{{0, 0, 0}, {3, 0, 0}, {3, 1, 0}, {3, -1, 0}}
                                        : std::vector<Coordinate>{{0, 0, 0}, {3, 0, 0}, {3, 0, -2}, {3, 1, -2}};
  return make_instance(NavPath{instructor_gold(w, mode, dim), mode, dim}, 0);
}

NavPath fixed_follower_exemplar(FrameMode mode, Dimensionality dim) {
  using D = MoveDirection;
  if (dim == Dimensionality::ThreeD) return {{{D::Right, 3}, {D::Down, 2}, {D::Backward, 4}, {D::Left, 2}}, mode, dim};
  return {{{D::Right, 3}, {D::Left, 1}, {D::Backward, 2}}, mode, dim};
}

OLScene fixed_ol_exemplar(OLMode mode) {
  OLScene s;
  s.mode = mode;
  if (mode == OLMode::Egocentric) {
    s.viewer = {{2, 2, 0}, Heading::MinusY};
    s.target = {BlockColor::Blue, {-3, -1, 0}};
    s.gold = relation_oracle_ego(s.viewer, s.target.position);
  } else {
    s.viewer = kOriginPose;
    s.reference = ColoredBlock{BlockColor::Green, {3, 5, 2}};
    s.target = {BlockColor::Orange, {1, 6, 2}};
    s.gold = relation_oracle_allo(s.viewer, s.reference->position, s.target.position);
  }
  return s;
}

Structure fixed_structure_exemplar() {
  return assemble_structure(StructureStyle::Simple,
                            {Shape{ShapeKind::Column, {1, 1, 6}, {2, -1, 0}, false, SolidColor{BlockColor::Orange}}});
}

std::string nav_intro(FrameMode mode, Dimensionality dim) {
  std::string out(dim == Dimensionality::TwoD ? kIntro2D : kIntro3D);
  if (mode == FrameMode::Egocentric) {
    out += kEgoRule;
  } else {
    out += kCardinalRule;
    if (dim == Dimensionality::ThreeD) out += kCardinalRule3D;
  }
  return out;
}

std::string ol_question(const OLScene& scene, std::span<const ColoredBlock> listing, Dimensionality dim) {
  const std::vector<ColoredBlock> all = scene.blocks();
  if (listing.empty()) listing = all;
  const std::string target(to_string(scene.target.color));
  const bool three_d = dim == Dimensionality::ThreeD;
  if (scene.mode == OLMode::Egocentric) {
    return "You are at " + to_string(scene.viewer.position, dim) + ", facing the " +
           heading_words(scene.viewer.heading) + " direction, so " + right_words(scene.viewer.heading) +
           " is to your right." + (three_d ? " The positive z axis is always up." : "") + " There is " +
           listing_text(listing, dim) + ". Where is the " + target + " block relative to you?";
  }
  const std::string ref(to_string(scene.reference->color));
  std::string facing = scene.viewer.heading == Heading::PlusY
                           ? "You may assume that you are facing the positive y direction."
                           : "You are facing the " + heading_words(scene.viewer.heading) + " direction, toward the " +
                                 ref + " block, so " + right_words(scene.viewer.heading) + " is to your right.";
  return "You are at the origin. There is " + listing_text(listing, dim) + ". " + facing +
         (three_d ? " The positive z axis is always up." : "") + " Where is the " + target +
         " block relative to the " + ref + " block given your point of view?";
}

std::string blocks_section(const Structure& s, BlockFormat format) {
  return "Blocks:\nThe blocks placed on the grid are:\n" + serialize(s.blocks, format) + "\n";
}

// Axis-by-axis comparison of two doubled points as seen by a viewer with
// heading `h`; `subject` is described relative to `object`.
std::string compare_from_viewpoint(Heading h, const Coordinate& object2, const Coordinate& subject2,
                                   const std::string& subject, const std::string& object, bool three_d) {
  std::ostringstream out;
  const Coordinate right = world_axis(h, MoveDirection::Right);
  const Coordinate ahead = heading_vector(h);
  for (int a = 0; a < 2; ++a) {
    const std::string axis = kAxisNames[a];
    const int o = component(object2, a);
    const int s = component(subject2, a);
    const int r = component(right, a);
    if (r != 0) {
      out << "For the " << axis << " dimension, " << right_words(h) << " is to my right, so " << axis << " values "
          << (r > 0 ? "bigger" : "smaller") << " than the " << object << "'s are further right. The " << object
          << " has " << axis << " = " << half(o) << " and the " << subject << " has " << axis << " = " << half(s)
          << ". So the " << subject << " is ";
      if (s == o) {
        out << "level with the " << object << " side to side.";
      } else {
        out << (((s - o) * r) > 0 ? "to the right of" : "to the left of") << " the " << object << ".";
      }
    } else {
      const int f = component(ahead, a);
      out << "For the " << axis << " dimension, I am looking along " << heading_words(h) << ", so " << axis
          << " values " << (f > 0 ? "smaller" : "bigger") << " than the " << object
          << "'s are closer to me and count as in front. The " << object << " has " << axis << " = " << half(o)
          << " and the " << subject << " has " << axis << " = " << half(s) << ". So the " << subject << " is ";
      if (s == o) {
        out << "level with the " << object << " front to back.";
      } else {
        out << (((s - o) * f) < 0 ? "in front of" : "behind") << " the " << object << ".";
      }
    }
    out << "\n\n";
  }
  if (three_d) {
    out << "For the z dimension, higher values are above. The " << object << " has z = " << half(object2.z)
        << " and the " << subject << " has z = " << half(subject2.z) << ". So the " << subject << " is ";
    if (object2.z == subject2.z) {
      out << "level with the " << object << ".";
    } else {
      out << (subject2.z > object2.z ? "above" : "below") << " the " << object << ".";
    }
    out << "\n\n";
  }
  return out.str();
}

std::string extent_sentence(const std::vector<ColoredBlock>& blocks) {
  Coordinate lo = blocks.front().position;
  Coordinate hi = lo;
  for (const auto& b : blocks) {
    lo = {std::min(lo.x, b.position.x), std::min(lo.y, b.position.y), std::min(lo.z, b.position.z)};
    hi = {std::max(hi.x, b.position.x), std::max(hi.y, b.position.y), std::max(hi.z, b.position.z)};
  }
  std::ostringstream out;
  out << "x from " << lo.x << " to " << hi.x << ", y from " << lo.y << " to " << hi.y << " and z from " << lo.z
      << " to " << hi.z;
  return out.str();
}

std::string colors_of(const Shape& s) {
  if (const auto* solid = std::get_if<SolidColor>(&s.colors)) return std::string(to_string(solid->color));
  if (const auto* h = std::get_if<HalvesColor>(&s.colors)) {
    return std::string(to_string(h->first)) + " and " + std::string(to_string(h->second));
  }
  const auto& a = std::get<AlternatingColor>(s.colors);
  return std::string(to_string(a.even)) + " and " + std::string(to_string(a.odd));
}

}  // namespace

std::string shape_noun(ShapeKind k) { return std::string(to_string(k)); }

std::string describe_moves(std::span<const Step> steps) {
  static const std::array<const char*, 3> middle{"You then move", "Next, you move", "You move"};
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Step& s = steps[i];
    std::string lead;
    if (steps.size() == 1) {
      lead = "You move";
    } else if (i == 0) {
      lead = "First, you move";
    } else if (i + 1 == steps.size()) {
      lead = "Finally, you move";
    } else {
      lead = middle[(i - 1) % middle.size()];
    }
    std::string where;
    switch (s.direction) {
      case MoveDirection::Left: where = "to your left"; break;
      case MoveDirection::Right: where = "to your right"; break;
      default: where = std::string(to_string(s.direction)); break;
    }
    if (!out.empty()) out += ' ';
    out += lead + " " + steps_word(s.length) + " " + where + ".";
  }
  return out;
}

std::string follower_answer(const Coordinate& c, Dimensionality dim) {
  return "[ANS] " + to_string(c, dim) + " [/ANS]";
}

std::string instructor_answer(std::span<const Step> steps) { return "[ANS] " + render_instructions(steps) + " [/ANS]"; }

std::string ol_answer(const OLScene& scene) {
  const std::string target(to_string(scene.target.color));
  if (scene.mode == OLMode::Egocentric) {
    return "the " + target + " block is [ANS] " + render_relations(scene.gold, Perspective::Viewer) + " [/ANS]";
  }
  return "the " + target + " block is [ANS] " + render_relations(scene.gold, Perspective::Reference) +
         " [/ANS] the " + std::string(to_string(scene.reference->color)) + " block";
}

std::string structure_answer(const Structure& s) { return "[ANS] " + s.gold_description + " [/ANS]"; }

std::string combo_answer(const ComboInstance& c) {
  return "the " + shape_noun(c.target.kind) + " is [ANS] " + render_relations(c.gold, Perspective::Reference) +
         " [/ANS] the " + shape_noun(c.reference.kind);
}

std::string explain_follower(const NavPath& path) {
  const Dimensionality dim = path.dimensionality;
  std::ostringstream out;
  out << "To solve this, we should break down the steps we take.\n\n";
  out << "1. We start at " << to_string(Coordinate{}, dim) << " facing the positive y direction, with positive x "
      << "to our right.";
  Pose pose = kOriginPose;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const Step& s = path.steps[i];
    const Pose next = apply_step(pose, s, path.mode);
    const Coordinate delta = next.position - pose.position;
    const Coordinate unit{delta.x / s.length, delta.y / s.length, delta.z / s.length};
    const std::string axis = axis_words(unit);
    const bool increasing = unit.x + unit.y + unit.z > 0;
    out << "\n\n" << i + 2 << ". Moving " << steps_word(s.length) << " " << direction_word(s.direction)
        << " means moving along " << axis << ", i.e. " << (increasing ? "increasing" : "decreasing") << " the "
        << axis.back() << " value by " << s.length << ". So, our new position is " << to_string(next.position, dim)
        << ".";
    if (path.mode == FrameMode::Egocentric) {
      if (is_vertical(s.direction)) {
        out << " Remember that moving up and down doesn't change our heading, so we are still facing "
            << heading_words(next.heading) << " with " << right_words(next.heading) << " to our right.";
      } else if (next.heading != pose.heading) {
        out << " We turned to face " << heading_words(next.heading) << ", so now " << right_words(next.heading)
            << " is to our right.";
      } else {
        out << " We are still facing " << heading_words(next.heading) << ".";
      }
    }
    pose = next;
  }
  out << "\nOur final position is " << follower_answer(pose.position, dim);
  return out.str();
}

std::string explain_instructor(const NavInstance& inst) {
  const Dimensionality dim = inst.path.dimensionality;
  const bool ego = inst.path.mode == FrameMode::Egocentric;
  const auto w = waypoints_of(inst);
  std::ostringstream out;
  out << (ego ? "I must remember that each time I move left, right, or back, I will be turning to face a new "
                "direction."
              : "The directions are fixed to the grid, so each leg maps straight onto one direction.");
  Pose pose = kOriginPose;
  for (std::size_t i = 0; i < inst.path.steps.size(); ++i) {
    const Step& s = inst.path.steps[i];
    const Pose next = apply_step(pose, s, inst.path.mode);
    std::string how;
    switch (s.direction) {
      case MoveDirection::Left: how = "to the left"; break;
      case MoveDirection::Right: how = "to the right"; break;
      default: how = direction_word(s.direction); break;
    }
    out << "\n\n" << i + 1 << ". To get from " << to_string(w[i], dim) << " to " << to_string(w[i + 1], dim)
        << ", I must move " << steps_word(s.length) << " " << how << ".";
    if (ego) {
      if (is_vertical(s.direction)) {
        out << " Moving up or down does not change my heading.";
      } else if (next.heading != pose.heading) {
        out << " I will now be facing the " << heading_words(next.heading) << " direction, with "
            << right_words(next.heading) << " to my right.";
      } else {
        out << " I am still facing the " << heading_words(next.heading) << " direction.";
      }
    }
    pose = next;
  }
  out << "\nSo, my path is " << instructor_answer(inst.path.steps) << ".";
  return out.str();
}

std::string explain_card2ego(std::span<const CardinalStep> steps) {
  const std::vector<Step> ego = card2ego(steps);
  auto where = [](MoveDirection d) -> std::string {
    switch (d) {
      case MoveDirection::Left: return "to my left";
      case MoveDirection::Right: return "to my right";
      case MoveDirection::Backward: return "behind me";
      default: return "straight ahead";
    }
  };
  std::ostringstream out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string target(to_string(steps[i].compass));
    const std::string step = std::string(to_string(ego[i].direction)) + " " + std::to_string(ego[i].length);
    if (i == 0) {
      out << "The first step is easy. I am facing North and must move " << target << " which is "
          << where(ego[i].direction) << ". So the first step is: " << step << ".";
    } else {
      const std::string prev(to_string(steps[i - 1].compass));
      out << "\n\nNow, for the " << ordinal(i + 1) << " step I am facing the direction I just moved in, " << prev
          << ", and I want to move " << target << ". If I am facing " << prev << ", " << target << " is "
          << where(ego[i].direction) << ". So the instruction is " << step << ".";
    }
  }
  out << "\n\nFinally, I can put that all together for: " << instructor_answer(ego);
  return out.str();
}

std::string explain_ol(const OLScene& scene, Dimensionality dim) {
  const bool three_d = dim == Dimensionality::ThreeD;
  const std::string color(to_string(scene.target.color));
  const Heading h = scene.viewer.heading;
  if (scene.mode == OLMode::Allocentric) {
    const std::string subject = color + " block";
    const std::string object = std::string(to_string(scene.reference->color)) + " block";
    return "I am at the origin facing the " + heading_words(h) + " direction, so " + right_words(h) +
           " is to my right. I need to place the " + subject + " relative to the " + object + ".\n\n" +
           compare_from_viewpoint(h, scene.reference->position * 2, scene.target.position * 2, subject, object,
                                  three_d) +
           "Putting that together, " + ol_answer(scene) + ".";
  }
  std::ostringstream out;
  const Coordinate right = world_axis(h, MoveDirection::Right);
  const Coordinate ahead = heading_vector(h);
  const Coordinate& me = scene.viewer.position;
  const Coordinate& it = scene.target.position;
  for (int a = 0; a < 2; ++a) {
    const std::string axis = kAxisNames[a];
    const int mine = component(me, a);
    const int theirs = component(it, a);
    out << (a == 0 ? "For the " : "Next, for the ") << axis << " dimension, ";
    if (component(right, a) != 0) {
      const int r = component(right, a);
      out << "I know that " << right_words(h) << " is to my right. That means " << axis << " values "
          << (r > 0 ? "bigger" : "smaller") << " than mine are to my right and ones " << (r > 0 ? "smaller" : "bigger")
          << " than mine are to my left. My " << axis << " coordinate is " << mine << " and the " << color
          << " block's is " << theirs << ". So it is ";
      out << (mine == theirs ? "neither left nor right of me." : ((theirs - mine) * r > 0 ? "to my right." : "to my left."));
    } else {
      const int f = component(ahead, a);
      out << "I know that I am facing " << heading_words(h) << ". This means that " << axis << " values "
          << (f > 0 ? "bigger" : "smaller") << " than mine are in front of me and those "
          << (f > 0 ? "smaller" : "bigger") << " than mine are behind me. My " << axis << " coordinate is " << mine
          << " and the " << color << " block's is " << theirs << ". So, it is ";
      out << (mine == theirs ? "neither in front of nor behind me."
                             : ((theirs - mine) * f > 0 ? "in front of me." : "behind me."));
    }
    out << "\n\n";
  }
  if (three_d) {
    out << "Now, for the z dimension, my orientation does not matter. Higher z values are above me and lower z "
           "values are below me. ";
    if (me.z == it.z) {
      out << "However, we are both at z = " << me.z << ", so we are level.";
    } else {
      out << "My z coordinate is " << me.z << " and the " << color << " block's is " << it.z << ". So it is "
          << (it.z > me.z ? "above me." : "below me.");
    }
    out << " ";
  }
  out << "Putting that together, " << ol_answer(scene);
  return out.str();
}

std::string explain_structure(const Structure& s) {
  std::ostringstream out;
  out << "These blocks form " << (s.shapes.size() == 1 ? "one shape" : std::to_string(s.shapes.size()) + " shapes")
      << ".";
  for (std::size_t i = 0; i < s.shapes.size(); ++i) {
    const Shape& shape = s.shapes[i];
    const auto blocks = to_blocks(shape);
    out << (i == 0 ? " The " : " Next, the ") << colors_of(shape) << " blocks span " << extent_sentence(blocks)
        << ", " << blocks.size() << " blocks making a " << shape.dims.dx << " by " << shape.dims.dy << " by "
        << shape.dims.dz << (shape.hollow ? " frame with an empty middle" : " box") << ", which is a "
        << shape_noun(shape.kind) << ".";
  }
  for (const ShapeLink& link : s.links) {
    out << " The " << colors_of(s.shapes[link.subject]) << " " << shape_noun(s.shapes[link.subject].kind) << " is "
        << render_relations(RelationSet{link.relation}, Perspective::Reference) << " the "
        << colors_of(s.shapes[link.object]) << " " << shape_noun(s.shapes[link.object].kind) << ".";
  }
  out << "\nSo the structure is " << structure_answer(s);
  return out.str();
}

std::string explain_combo(const ComboInstance& c) {
  std::ostringstream out;
  out << "I start at (0, 0, 0) facing the positive y direction.";
  Pose pose = kOriginPose;
  for (const Step& s : c.path.steps) {
    pose = apply_step_egocentric(pose, s);
    out << " Moving " << steps_word(s.length) << " " << direction_word(s.direction) << " leaves me facing "
        << heading_words(pose.heading) << " at " << to_string(pose.position) << ".";
  }
  out << " So I end at " << to_string(pose.position) << " facing " << heading_words(pose.heading) << ", with "
      << right_words(pose.heading) << " to my right.\n\n";
  const std::string subject = shape_noun(c.target.kind);
  const std::string object = shape_noun(c.reference.kind);
  const Coordinate t2 = doubled_center(to_blocks(c.target));
  const Coordinate r2 = doubled_center(to_blocks(c.reference));
  out << "The " << subject << " spans " << extent_sentence(to_blocks(c.target)) << ", so its center is (" << half(t2.x)
      << ", " << half(t2.y) << ", " << half(t2.z) << "). The " << object << " spans "
      << extent_sentence(to_blocks(c.reference)) << ", so its center is (" << half(r2.x) << ", " << half(r2.y)
      << ", " << half(r2.z) << ").\n\n";
  out << compare_from_viewpoint(pose.heading, r2, t2, subject, object, true);
  out << "Putting that together, " << combo_answer(c) << ".";
  return out.str();
}

std::string follower_prompt(const NavPath& path, ShotMode shots, std::span<const NavPath> exemplars) {
  const Dimensionality dim = path.dimensionality;
  std::ostringstream out;
  out << nav_intro(path.mode, dim) << "\nExplain your final coordinates after travelling. Please format your final "
      << "coordinates as: [ANS] " << (dim == Dimensionality::TwoD ? "(x, y)" : "(x, y, z)") << " [/ANS]. Let's go!\n\n";
  if (shots == ShotMode::OneWithReasoning) {
    const NavPath ex = fixed_follower_exemplar(path.mode, dim);
    out << "Let's start with an example: " << describe_moves(ex.steps) << " Where are you now?\n\n"
        << explain_follower(ex) << "\n\nNow, let's try a real problem!\n";
  } else if (shots == ShotMode::FewNoReasoning) {
    out << "Here are some examples.\n\n";
    for (const NavPath& ex : exemplars) {
      out << describe_moves(ex.steps) << " Where are you now?\n" << follower_answer(follower_gold(ex), dim) << "\n\n";
    }
    out << "Now, let's try a real problem!\n";
  }
  out << describe_moves(path.steps) << " Explain your final coordinates: ";
  return out.str();
}

std::string instructor_prompt(const NavInstance& inst, ShotMode shots, std::span<const NavInstance> exemplars) {
  const Dimensionality dim = inst.path.dimensionality;
  std::ostringstream out;
  out << nav_intro(inst.path.mode, dim) << "\n\n";
  if (shots == ShotMode::OneWithReasoning) {
    const NavInstance ex = fixed_instructor_exemplar(inst.path.mode, dim);
    out << "First, let me give you an example!\n" << waypoint_sentence_exemplar(ex, dim) << "\n\n"
        << explain_instructor(ex) << "\nGreat, now let's try a real problem!\n\n";
  } else if (shots == ShotMode::FewNoReasoning) {
    out << "Here are some examples.\n\n";
    for (const NavInstance& ex : exemplars) {
      out << waypoint_sentence_exemplar(ex, dim) << "\n" << instructor_answer(ex.path.steps) << "\n\n";
    }
    out << "Great, now let's try a real problem!\n\n";
  }
  out << waypoint_sentence(inst, dim) << " Describe the path that you will take to traverse the provided "
      << "coordinates. Format your answer as a series of directions and distances, e.g. [ANS] forward 2, right 3, "
      << "back 1 [/ANS]. Let's go!";
  return out.str();
}

std::string card2ego_prompt(std::span<const CardinalStep> steps, ShotMode shots,
                            std::span<const std::vector<CardinalStep>> exemplars) {
  std::ostringstream out;
  out << kCard2EgoIntro << "\n\n";
  if (shots == ShotMode::OneWithReasoning) {
    const std::vector<CardinalStep> ex{{Compass::West, 2}, {Compass::North, 3}, {Compass::East, 1}};
    out << "Let's begin with an example. You start by facing North and the path is: " << compass_path(ex) << ".\n\n"
        << explain_card2ego(ex) << "\nNow, you give it a try! ";
  } else if (shots == ShotMode::FewNoReasoning) {
    out << "Here are some examples.\n\n";
    for (const auto& ex : exemplars) {
      out << "You start facing North and the path is: " << compass_path(ex) << ".\n"
          << instructor_answer(card2ego(ex)) << "\n\n";
    }
    out << "Now, you give it a try! ";
  }
  out << "You start facing North and the path is: " << compass_path(steps)
      << ". What is the path expressed with egocentric directions?";
  if (shots != ShotMode::OneWithReasoning) {
    out << " Format your answer as a series of directions and distances, e.g. [ANS] left 2, forward 3 [/ANS].";
  }
  return out.str();
}

std::string ol_prompt(const OLScene& scene, ShotMode shots, std::span<const OLScene> exemplars,
                      std::span<const ColoredBlock> listing, Dimensionality dim) {
  const bool ego = scene.mode == OLMode::Egocentric;
  const std::string range = "All axes range from (-" + std::to_string(scene.half_width) + ", " +
                            std::to_string(scene.half_width) + ").";
  std::ostringstream out;
  if (dim == Dimensionality::ThreeD) {
    out << "You are in a 3D environment with (x, y, z) coordinates set up like a standard Cartesian plane. The x "
           "and y dimensions are horizontal, while the z dimension is the vertical component. ";
  } else {
    out << "You are in a 2D environment with (x, y) coordinates set up like a standard horizontal Cartesian "
           "plane. ";
  }
  out << range;
  if (ego) {
    out << " Your task is to describe where objects are relative to you, without using coordinates. Instead use "
           "relative descriptions like 'directly behind me' or 'to my left'. Explain your thought process and "
           "please format your final answer with [ANS] tags like so: the green block is [ANS] in front of me and to "
           "my left [/ANS]. Let's get started!\n \n";
  } else {
    out << " Your task is to describe where objects are relative to you and other objects, without using "
           "coordinates. Instead use relative descriptions like 'directly in front of the blue cylinder'. Explain "
           "your thought process and please format your final answer with [ANS] tags like so: the yellow block is "
           "[ANS] below and to the back right of [/ANS] the purple block. Let's get started!\n\n";
  }
  if (shots == ShotMode::OneWithReasoning) {
    const OLScene ex = fixed_ol_exemplar(scene.mode);
    out << "Here is an example: " << ol_question(ex, {}, dim) << " \n\n" << explain_ol(ex, dim)
        << "\n\nNow let's try a real problem! ";
  } else if (shots == ShotMode::FewNoReasoning) {
    out << "Here are some examples.\n\n";
    for (const OLScene& ex : exemplars) out << ol_question(ex, {}, dim) << "\n" << ol_answer(ex) << "\n\n";
    out << "Now let's try a real problem! ";
  }
  out << ol_question(scene, listing, dim);
  return out.str();
}

std::string structure_prompt(const Structure& s, BlockFormat format, ShotMode shots,
                             std::span<const Structure> exemplars) {
  std::ostringstream out;
  out << kStructureIntro;
  if (shots == ShotMode::OneWithReasoning) {
    const Structure ex = fixed_structure_exemplar();
    out << "Here is an example.\n\n" << blocks_section(ex, format) << "\n" << explain_structure(ex)
        << "\n\nNow it is your turn.\n\n";
  } else if (shots == ShotMode::FewNoReasoning) {
    for (const Structure& ex : exemplars) {
      out << blocks_section(ex, format) << "Description: " << structure_answer(ex) << "\n\n";
    }
    out << "Now it is your turn.\n\n";
  }
  out << blocks_section(s, format) << "Now describe the structure they made. ";
  return out.str();
}

std::string combo_prompt(const ComboInstance& c) {
  std::ostringstream out;
  out << kComboIntro << "\nThere is " << listing_text(c.blocks, Dimensionality::ThreeD) << ".\n"
      << describe_moves(c.path.steps) << "\nNow, where is the " << shape_noun(c.target.kind) << " relative to the "
      << shape_noun(c.reference.kind) << " given your point of view?";
  return out.str();
}

}  // namespace gridbench
