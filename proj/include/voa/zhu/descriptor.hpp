#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "voa/core/context.hpp"

namespace voa {

using json = nlohmann::ordered_json;

/// a o_{g,n} b
struct CircleZhu {
  Monomial a, b;
  FracIndex n;
};
/// (L_(-1) + L_(0)) a
struct LShiftZhu {
  Monomial a;
};
/// generalized bimodule circle with depth shift k and numerator shift s (k = s = 0 is O-dagger)
struct CircleBimod {
  Monomial a, v;
  FracIndex m, n;
  int k = 0, s = 0;
};
/// (L_(-1) + L_(0) + m - n) v
struct LShiftBimod {
  Monomial v;
  FracIndex m, n;
};
/// O'' spanning element
struct OppGen {
  Monomial a, b, c, d;
  FracIndex m, n, p1, p2, p3;
};
/// O''' spanning element; inner is an O'_{p2,p1} generator
struct OpppGen {
  Monomial a, c;
  FracIndex m, n, p1, p2;
  std::variant<CircleBimod, LShiftBimod> inner;
};

using GeneratorDescriptor = std::variant<CircleZhu, LShiftZhu, CircleBimod, LShiftBimod, OppGen, OpppGen>;

inline Monomial parse_monomial(const std::string& text, char letter) {
  std::vector<int> parts;
  std::size_t pos = 0;
  const std::string open = std::string(1, letter) + "[-";
  while (text.compare(pos, open.size(), open) == 0) {
    pos += open.size();
    std::size_t close = text.find(']', pos);
    if (close == std::string::npos) throw DomainError("malformed monomial '" + text + "'");
    const std::string digits = text.substr(pos, close - pos);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("malformed monomial '" + text + "'");
    parts.push_back(std::stoi(digits));
    pos = close + 1;
  }
  if (text.substr(pos) != "|1>") throw DomainError("malformed monomial '" + text + "'");
  Monomial m(parts);
  if (m.parts != parts) throw DomainError("monomial parts must be weakly decreasing in '" + text + "'");
  for (int p : parts)
    if (p < (letter == 'L' ? 2 : 1)) throw DomainError("mode out of range in '" + text + "'");
  return m;
}

namespace detail {

inline json index_json(const FracIndex& x) { return x.to_string(); }

inline FracIndex index_from(const json& j, const char* key, int T) {
  if (!j.contains(key) || !j.at(key).is_string()) throw DomainError(std::string("missing index '") + key + "'");
  return FracIndex::parse(j.at(key).get<std::string>(), T);
}

inline Monomial mono_from(const json& j, const char* key, const VoaContext& ctx) {
  if (!j.contains(key) || !j.at(key).is_string()) throw DomainError(std::string("missing monomial '") + key + "'");
  return parse_monomial(j.at(key).get<std::string>(), ctx.algebra().letter());
}

inline int int_from(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) throw DomainError(std::string("missing integer '") + key + "'");
  return j.at(key).get<int>();
}

}  // namespace detail

inline json to_json(const VoaContext& ctx, const GeneratorDescriptor& g) {
  using detail::index_json;
  auto t = [&](const Monomial& m) { return ctx.text(m); };
  return std::visit(
      [&](const auto& d) -> json {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, CircleZhu>) {
          return {{"kind", "CircleZhu"}, {"a", t(d.a)}, {"b", t(d.b)}, {"n", index_json(d.n)}};
        } else if constexpr (std::is_same_v<D, LShiftZhu>) {
          return {{"kind", "LShiftZhu"}, {"a", t(d.a)}};
        } else if constexpr (std::is_same_v<D, CircleBimod>) {
          return {{"kind", "CircleBimod"}, {"a", t(d.a)}, {"v", t(d.v)}, {"m", index_json(d.m)},
                  {"n", index_json(d.n)}, {"k", d.k}, {"s", d.s}};
        } else if constexpr (std::is_same_v<D, LShiftBimod>) {
          return {{"kind", "LShiftBimod"}, {"v", t(d.v)}, {"m", index_json(d.m)}, {"n", index_json(d.n)}};
        } else if constexpr (std::is_same_v<D, OppGen>) {
          return {{"kind", "OppGen"}, {"a", t(d.a)}, {"b", t(d.b)}, {"c", t(d.c)}, {"d", t(d.d)},
                  {"m", index_json(d.m)}, {"n", index_json(d.n)}, {"p1", index_json(d.p1)},
                  {"p2", index_json(d.p2)}, {"p3", index_json(d.p3)}};
        } else {
          json inner = std::visit([&](const auto& x) { return to_json(ctx, GeneratorDescriptor(x)); }, d.inner);
          return {{"kind", "OpppGen"}, {"a", t(d.a)}, {"c", t(d.c)}, {"m", index_json(d.m)},
                  {"n", index_json(d.n)}, {"p1", index_json(d.p1)}, {"p2", index_json(d.p2)},
                  {"inner", inner}};
        }
      },
      g);
}

inline GeneratorDescriptor descriptor_from_json(const VoaContext& ctx, const json& j) {
  using namespace detail;
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw DomainError("generator descriptor needs a kind");
  const std::string kind = j.at("kind").get<std::string>();
  const int T = ctx.order();
  if (kind == "CircleZhu") return CircleZhu{mono_from(j, "a", ctx), mono_from(j, "b", ctx), index_from(j, "n", T)};
  if (kind == "LShiftZhu") return LShiftZhu{mono_from(j, "a", ctx)};
  if (kind == "CircleBimod")
    return CircleBimod{mono_from(j, "a", ctx), mono_from(j, "v", ctx), index_from(j, "m", T),
                       index_from(j, "n", T), int_from(j, "k"), int_from(j, "s")};
  if (kind == "LShiftBimod") return LShiftBimod{mono_from(j, "v", ctx), index_from(j, "m", T), index_from(j, "n", T)};
  if (kind == "OppGen")
    return OppGen{mono_from(j, "a", ctx), mono_from(j, "b", ctx), mono_from(j, "c", ctx), mono_from(j, "d", ctx),
                  index_from(j, "m", T), index_from(j, "n", T), index_from(j, "p1", T),
                  index_from(j, "p2", T), index_from(j, "p3", T)};
  if (kind == "OpppGen") {
    if (!j.contains("inner")) throw DomainError("OpppGen needs an inner generator");
    GeneratorDescriptor inner = descriptor_from_json(ctx, j.at("inner"));
    OpppGen g{mono_from(j, "a", ctx), mono_from(j, "c", ctx), index_from(j, "m", T), index_from(j, "n", T),
              index_from(j, "p1", T), index_from(j, "p2", T), LShiftBimod{}};
    if (auto* c = std::get_if<CircleBimod>(&inner)) g.inner = *c;
    else if (auto* l = std::get_if<LShiftBimod>(&inner)) g.inner = *l;
    else throw DomainError("OpppGen inner must be an O' generator");
    return g;
  }
  throw DomainError("unknown generator kind '" + kind + "'");
}

}  // namespace voa
