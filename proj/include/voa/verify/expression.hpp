#pragma once

#include <string>

#include "voa/verify/families.hpp"

// Targets are stored as small expression trees so a certificate can rebuild them.

namespace voa::expr {

inline json basis(const VoaContext& ctx, const Monomial& m) { return {{"op", "basis"}, {"m", ctx.text(m)}}; }
inline json omega() { return {{"op", "omega"}}; }
inline json gen(const VoaContext& ctx, const GeneratorDescriptor& g) {
  return {{"op", "gen"}, {"generator", to_json(ctx, g)}};
}
inline json add(json x, json y) { return {{"op", "add"}, {"args", json::array({std::move(x), std::move(y)})}}; }
inline json sub(json x, json y) { return {{"op", "sub"}, {"args", json::array({std::move(x), std::move(y)})}}; }
inline json theta(json x) { return {{"op", "theta"}, {"arg", std::move(x)}}; }
inline json star_zhu(json a, json b, const FracIndex& n) {
  return {{"op", "star_zhu"}, {"n", n.to_string()}, {"args", json::array({std::move(a), std::move(b)})}};
}
inline json left(json a, json u, const FracIndex& m, const FracIndex& p, const FracIndex& n) {
  return {{"op", "left"}, {"m", m.to_string()}, {"p", p.to_string()}, {"n", n.to_string()},
          {"args", json::array({std::move(a), std::move(u)})}};
}
inline json right(json u, json a, const FracIndex& m, const FracIndex& n) {
  return {{"op", "right"}, {"m", m.to_string()}, {"n", n.to_string()}, {"args", json::array({std::move(u), std::move(a)})}};
}
inline json dj_star(json a, json b, const FracIndex& m, const FracIndex& n) {
  return {{"op", "dj_star"}, {"m", m.to_string()}, {"n", n.to_string()}, {"args", json::array({std::move(a), std::move(b)})}};
}
inline json gen_circle(json a, json v, const FracIndex& m, const FracIndex& n, int k, int s) {
  return {{"op", "gen_circle"}, {"m", m.to_string()}, {"n", n.to_string()}, {"k", k}, {"s", s},
          {"args", json::array({std::move(a), std::move(v)})}};
}
inline json congruence(json a, json b, const FracIndex& m, const FracIndex& n, int N) {
  return {{"op", "congruence"}, {"m", m.to_string()}, {"n", n.to_string()}, {"N", N},
          {"args", json::array({std::move(a), std::move(b)})}};
}

namespace detail {
inline const json& arg(const json& e, std::size_t i) {
  if (!e.contains("args") || !e.at("args").is_array() || e.at("args").size() <= i)
    throw DomainError("expression is missing argument " + std::to_string(i));
  return e.at("args").at(i);
}
}  // namespace detail

inline StateVector evaluate(const VoaContext& ctx, const json& e) {
  using voa::detail::index_from;
  using voa::detail::int_from;
  if (!e.is_object() || !e.contains("op") || !e.at("op").is_string()) throw DomainError("expression needs an op");
  const std::string op = e.at("op").get<std::string>();
  const int T = ctx.order();
  auto a0 = [&] { return evaluate(ctx, detail::arg(e, 0)); };
  auto a1 = [&] { return evaluate(ctx, detail::arg(e, 1)); };
  if (op == "basis") return StateVector::basis(voa::detail::mono_from(e, "m", ctx));
  if (op == "omega") return ctx.algebra().omega();
  if (op == "gen") {
    if (!e.contains("generator")) throw DomainError("gen expression needs a generator");
    return regenerate(ctx, descriptor_from_json(ctx, e.at("generator")));
  }
  if (op == "add") return a0() + a1();
  if (op == "sub") return a0() - a1();
  if (op == "theta") {
    if (!e.contains("arg")) throw DomainError("theta needs an arg");
    return ctx.theta(evaluate(ctx, e.at("arg")));
  }
  if (op == "star_zhu") return star_zhu(ctx, a0(), a1(), index_from(e, "n", T));
  if (op == "left") return left_action(ctx, a0(), a1(), index_from(e, "m", T), index_from(e, "p", T), index_from(e, "n", T));
  if (op == "right") return right_action(ctx, a0(), a1(), index_from(e, "m", T), index_from(e, "n", T));
  if (op == "dj_star") return dj_star(ctx, a0(), a1(), index_from(e, "m", T), index_from(e, "n", T));
  if (op == "gen_circle")
    return generalized_circle(ctx, a0(), a1(), index_from(e, "m", T), index_from(e, "n", T), int_from(e, "k"),
                              int_from(e, "s"));
  if (op == "congruence")
    return congruence_coefficient(ctx, a0(), a1(), index_from(e, "m", T), index_from(e, "n", T), int_from(e, "N"));
  throw DomainError("unknown expression op '" + op + "'");
}

}  // namespace voa::expr
