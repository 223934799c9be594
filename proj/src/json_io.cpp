#include "cactus/json_io.hpp"

#include <map>

namespace cactus {

namespace {

// Maps integer or string ids to integers, interning strings above the
// largest integer id seen.
class IdTable {
 public:
  void reserve(Json const& token) {
    if (token.is_number_integer()) max_ = std::max(max_, token.get<int>());
    if (token.is_string()) {
      if (auto n = as_int(token.get<std::string>())) max_ = std::max(max_, *n);
    }
  }
  int operator()(Json const& token) {
    if (token.is_number_integer()) return token.get<int>();
    if (!token.is_string()) throw ParseError("id must be an integer or a string");
    auto const s = token.get<std::string>();
    if (auto n = as_int(s)) return *n;
    auto [it, inserted] = names_.emplace(s, max_ + 1);
    if (inserted) ++max_;
    return it->second;
  }

 private:
  static std::optional<int> as_int(std::string const& s) {
    if (s.empty()) return std::nullopt;
    std::size_t used = 0;
    try {
      int const n = std::stoi(s, &used);
      if (used == s.size()) return n;
    } catch (std::exception const&) {
    }
    return std::nullopt;
  }

  int max_ = -1;
  std::map<std::string, int> names_;
};

Json const& field(Json const& j, char const* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw ParseError(std::string("missing field \"") + name + "\"");
  }
  return j.at(name);
}

Json const& array_field(Json const& j, char const* name) {
  auto const& f = field(j, name);
  if (!f.is_array()) throw ParseError(std::string("field \"") + name + "\" must be an array");
  return f;
}

int sign_of(Json const& s) {
  if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1)) {
    throw ParseError("sign must be 1 or -1");
  }
  return s.get<int>();
}

std::vector<std::pair<PointId, PointId>> pairs_from(Json const& j) {
  std::vector<std::pair<PointId, PointId>> out;
  for (auto const& p : j) out.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  return out;
}

OrientedCyclicOrder order_from(Json const& j) {
  std::vector<Endpoint> seq;
  for (auto const& e : j) seq.push_back({e.at(0).get<int>(), sign_of(e.at(1))});
  return OrientedCyclicOrder(std::move(seq));
}

}  // namespace

Json to_json(OrientedCyclicOrder const& o) {
  Json out = Json::array();
  for (auto const& e : o.sequence()) out.push_back({e.point, e.sign});
  return out;
}

Json to_json(GaussDiagram const& d) {
  Json out;
  out["circles"] = d.circles;
  Json sets = Json::object();
  for (auto const& [label, order] : d.orders) {
    sets[std::to_string(label)] = {{"points", d.points_of(label)}, {"order", to_json(order)}};
  }
  out["sets"] = std::move(sets);
  return out;
}

GaussDiagram diagram_from_json(Json const& j) {
  if (!j.is_object()) throw ParseError("diagram must be a JSON object");
  auto const& circles = array_field(j, "circles");
  auto const& sets = j.contains("sets") ? j.at("sets") : Json::object();
  if (!sets.is_object()) throw ParseError("field \"sets\" must be an object");

  IdTable points;
  IdTable labels;
  for (auto const& c : circles) {
    if (!c.is_array()) throw ParseError("each circle must be an array");
    for (auto const& p : c) points.reserve(p);
  }
  for (auto const& [name, body] : sets.items()) labels.reserve(Json(name));

  GaussDiagram d;
  std::map<PointId, int> seen;
  for (auto const& c : circles) {
    auto& circle = d.circles.emplace_back();
    for (auto const& p : c) {
      auto const id = points(p);
      if (++seen[id] > 1) throw ParseError("duplicate point id " + std::to_string(id));
      circle.push_back(id);
    }
  }
  for (auto const& [name, body] : sets.items()) {
    Label const label = labels(Json(name));
    if (d.orders.contains(label)) throw ParseError("duplicate set label " + name);
    for (auto const& p : array_field(body, "points")) {
      auto const id = points(p);
      if (!seen.contains(id)) {
        throw ParseError("set " + name + " names point " + p.dump() + " not on any circle");
      }
      if (!d.labels.emplace(id, label).second) {
        throw ParseError("point " + p.dump() + " belongs to two sets");
      }
    }
    std::vector<Endpoint> seq;
    for (auto const& e : array_field(body, "order")) {
      if (!e.is_array() || e.size() != 2) throw ParseError("order entries are [point, sign]");
      seq.push_back({points(e.at(0)), sign_of(e.at(1))});
    }
    d.orders.emplace(label, OrientedCyclicOrder(std::move(seq)));
  }
  for (auto const& [id, count] : seen) {
    if (!d.labels.contains(id)) {
      throw ParseError("point " + std::to_string(id) + " belongs to no set");
    }
  }
  return d;
}

GaussDiagram parse_diagram(std::string const& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (Json::parse_error const& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return diagram_from_json(j);
}

namespace {

Json pairs_json(std::vector<std::pair<PointId, PointId>> const& pairs) {
  Json out = Json::array();
  for (auto const& [a, b] : pairs) out.push_back({a, b});
  return out;
}

}  // namespace

Json to_json(MoveDescriptor const& m) {
  if (auto const* phi = std::get_if<PhiDescriptor>(&m)) {
    Json out{{"type", "phi"},
             {"direction", phi->direction == PhiDirection::create ? "create" : "annihilate"},
             {"setA", phi->set_a},
             {"setB", phi->set_b},
             {"pairing", pairs_json(phi->pairing)}};
    if (phi->direction == PhiDirection::create) {
      Json ins = Json::array();
      for (auto const& i : phi->insertions) {
        ins.push_back({{"circle", i.circle},
                       {"after", i.after ? Json(*i.after) : Json(nullptr)},
                       {"points", i.points}});
      }
      out["insertions"] = std::move(ins);
      out["orderA"] = to_json(phi->order_a);
      out["orderB"] = to_json(phi->order_b);
    }
    return out;
  }
  if (auto const* psi = std::get_if<PsiDescriptor>(&m)) {
    Json att = Json::array();
    for (auto const& a : psi->attachment) {
      att.push_back({{"small", a.small}, {"big", a.big}, {"side", a.side}});
    }
    return {{"type", "psi"}, {"bigSet", psi->big}, {"smallSet", psi->small},
            {"attachment", std::move(att)}};
  }
  auto const& r = std::get<RenameDescriptor>(m);
  return {{"type", "rename"}, {"from", r.from}, {"to", r.to}, {"points", pairs_json(r.points)}};
}

MoveDescriptor move_from_json(Json const& j) {
  try {
    auto const type = field(j, "type").get<std::string>();
    if (type == "phi") {
      PhiDescriptor m;
      m.set_a = field(j, "setA").get<int>();
      m.set_b = field(j, "setB").get<int>();
      m.pairing = pairs_from(array_field(j, "pairing"));
      auto const dir = field(j, "direction").get<std::string>();
      if (dir == "create") {
        m.direction = PhiDirection::create;
        for (auto const& i : array_field(j, "insertions")) {
          Insertion ins;
          ins.circle = field(i, "circle").get<std::size_t>();
          if (!field(i, "after").is_null()) ins.after = i.at("after").get<int>();
          ins.points = array_field(i, "points").get<std::vector<int>>();
          m.insertions.push_back(std::move(ins));
        }
        m.order_a = order_from(array_field(j, "orderA"));
        m.order_b = order_from(array_field(j, "orderB"));
      } else if (dir != "annihilate") {
        throw ParseError("unknown Phi direction " + dir);
      }
      return m;
    }
    if (type == "psi") {
      PsiDescriptor m;
      m.big = field(j, "bigSet").get<int>();
      m.small = field(j, "smallSet").get<int>();
      for (auto const& a : array_field(j, "attachment")) {
        m.attachment.push_back({field(a, "small").get<int>(), field(a, "big").get<int>(),
                                sign_of(field(a, "side"))});
      }
      return m;
    }
    if (type == "rename") {
      return RenameDescriptor{field(j, "from").get<int>(), field(j, "to").get<int>(),
                              pairs_from(array_field(j, "points"))};
    }
    throw ParseError("unknown move type " + type);
  } catch (Json::exception const& e) {
    throw ParseError(std::string("malformed move: ") + e.what());
  }
}

Json to_json(MoveSequence const& seq) {
  Json steps = Json::array();
  for (auto const& s : seq.steps) {
    steps.push_back({{"move", to_json(s.move)}, {"key", s.key}});
  }
  return {{"start", to_json(seq.start)}, {"steps", std::move(steps)}};
}

// Results are recomputed by replaying the moves; a recorded key that
// disagrees with the replay is rejected.
MoveSequence sequence_from_json(Json const& j) {
  MoveSequence seq{diagram_from_json(field(j, "start")), {}};
  GaussDiagram current = seq.start;
  for (auto const& s : array_field(j, "steps")) {
    auto move = move_from_json(field(s, "move"));
    try {
      current = apply_move(current, move);
    } catch (std::invalid_argument const& e) {
      throw ParseError(std::string("move does not apply: ") + e.what());
    }
    auto key = canonical_form(current);
    if (s.contains("key") && s.at("key").get<std::string>() != key) {
      throw ParseError("recorded key does not match the replayed diagram");
    }
    seq.steps.push_back({std::move(move), current, std::move(key)});
  }
  return seq;
}

}  // namespace cactus
