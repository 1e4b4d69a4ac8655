#include "clonealg/block_algebra.hpp"

#include <algorithm>

namespace clonealg {

  namespace {

    std::size_t needed_arity(Block const& a, std::size_t n, auto const& arity_of) {
      std::size_t const r = a.arity();
      std::size_t       k = r;
      for (std::size_t i = 0; i < std::min(r, n); ++i) {
        k = std::max(k, arity_of(i));
      }
      return k;
    }

    Block substitute(OpTable const& outer, std::size_t n, std::size_t k, auto const& inner_of) {
      std::vector<OpTable> inner;
      inner.reserve(outer.arity());
      for (std::size_t i = 0; i < outer.arity(); ++i) {
        if (i < n) {
          inner.push_back(expand(inner_of(i), k));
        } else {
          inner.push_back(OpTable::projection(outer.universe(), i + 1, k));
        }
      }
      return canonicalize(compose(outer, inner, k));
    }

  }  // namespace

  BlockAlgebra::BlockAlgebra(CloneSection section, std::vector<NamedOp> signature_ops, std::string name)
      : _section(std::move(section)), _sig_ops(std::move(signature_ops)), _name(std::move(name)) {
    if (_name.empty()) {
      _name = "B(" + _section.universe()->name() + ", cap " + std::to_string(_section.cap()) + ")";
    }
    for (auto const& [op_name, op] : _sig_ops) {
      _sig.emplace_back(op_name, op.arity());
      auto at = _section.find(canonicalize(op));
      if (!at) {
        throw UniverseError("signature operation '" + op_name + "' is not in the clone section");
      }
      _sigma_blocks.push_back(static_cast<Element>(*at));
    }
  }

  Element BlockAlgebra::e(std::size_t i) const {
    if (i == 0 || i > _section.cap()) {
      throw CapError("e_" + std::to_string(i) + " is not available at cap "
                     + std::to_string(_section.cap()));
    }
    return element(Block(OpTable::projection(_section.universe(), i, i)));
  }

  std::optional<Element> BlockAlgebra::find(Block const& b) const {
    auto at = _section.find(b);
    if (!at) {
      return std::nullopt;
    }
    return static_cast<Element>(*at);
  }

  Element BlockAlgebra::element(Block const& b) const {
    auto at = find(b);
    if (!at) {
      throw Error("block " + render_table(b.generator()) + " is not in the section of " + _name);
    }
    return *at;
  }

  Element BlockAlgebra::q(std::size_t n, Element a, std::span<Element const> bs) const {
    if (bs.size() != n) {
      throw ArityError("q_" + std::to_string(n) + " applied to " + std::to_string(bs.size())
                       + " arguments");
    }
    Block const&      outer = block(a);
    std::size_t const k
        = needed_arity(outer, n, [&](std::size_t i) { return block(bs[i]).arity(); });
    return element(substitute(outer.generator(), n, k,
                              [&](std::size_t i) -> OpTable const& { return block(bs[i]).generator(); }));
  }

  Block BlockAlgebra::q_padded(std::size_t n, Element a, std::span<Element const> bs, std::size_t k) const {
    if (bs.size() != n) {
      throw ArityError("q_" + std::to_string(n) + " applied to " + std::to_string(bs.size())
                       + " arguments");
    }
    if (k < n || k < block(a).arity()) {
      throw ArityError("padding arity " + std::to_string(k) + " is too small");
    }
    for (auto b : bs) {
      if (k < block(b).arity()) {
        throw ArityError("padding arity " + std::to_string(k) + " is too small");
      }
    }
    OpTable outer = block(a).member(k);
    return substitute(outer, n, k,
                      [&](std::size_t i) -> OpTable const& { return block(bs[i]).generator(); });
  }

  Element BlockAlgebra::sigma(std::size_t op, std::span<Element const> args) const {
    if (op >= _sig.size()) {
      throw ArityError("unknown operation index " + std::to_string(op));
    }
    if (args.size() != _sig[op].second) {
      throw ArityError("operation '" + _sig[op].first + "' has arity "
                       + std::to_string(_sig[op].second));
    }
    return q(args.size(), _sigma_blocks[op], args);
  }

  std::string BlockAlgebra::render(Element a) const {
    return _section.term(a).to_string();
  }

  BlockAlgebraPtr clv_block_algebra(FinAlgebra const& a, std::size_t cap) {
    return std::make_shared<BlockAlgebra const>(term_clone(a, cap), a.ops(),
                                                "Cl(" + a.name() + ", cap " + std::to_string(cap) + ")");
  }

  Block q_apply(Block const& a, std::vector<Block> const& bs, std::size_t n) {
    if (bs.size() != n) {
      throw ArityError("q_" + std::to_string(n) + " applied to " + std::to_string(bs.size())
                       + " arguments");
    }
    std::size_t const k = needed_arity(a, n, [&](std::size_t i) { return bs[i].arity(); });
    return substitute(a.generator(), n, k,
                      [&](std::size_t i) -> OpTable const& { return bs[i].generator(); });
  }

  Element rca_embed(CloneAlgebraHandle const& c, Element x, Stream const& s) {
    std::size_t const    k = s.support();
    std::vector<Element> args(k);
    for (std::size_t i = 0; i < k; ++i) {
      args[i] = s.at(i + 1);
    }
    return c.q(k, x, args);
  }

  Stream epsilon_stream(CloneAlgebraHandle const& c) {
    return Stream("epsilon", [&c](std::size_t i) { return static_cast<Value>(c.e(i)); });
  }

}  // namespace clonealg
