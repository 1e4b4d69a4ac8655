#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "clonealg/clone_engine.hpp"
#include "clonealg/handle.hpp"

namespace clonealg {

  // Clone algebra whose elements are the blocks of a clone section.
  // Element ids follow the section's member order.
  class BlockAlgebra : public CloneAlgebraHandle {
   public:
    // Every signature operation must be a member of the section (up to
    // similarity).
    BlockAlgebra(CloneSection section, std::vector<NamedOp> signature_ops, std::string name = "");

    std::string name() const override {
      return _name;
    }
    std::size_t size() const override {
      return _section.members().size();
    }
    std::size_t e_limit() const override {
      return _section.cap();
    }
    Element e(std::size_t i) const override;
    Element q(std::size_t n, Element a, std::span<Element const> bs) const override;
    Signature const& signature() const override {
      return _sig;
    }
    Element sigma(std::size_t op, std::span<Element const> args) const override;
    std::optional<std::size_t> dim_bound() const override {
      return _section.cap();
    }
    std::optional<std::size_t> dimension(Element a) const override {
      return block(a).arity();
    }
    std::string render(Element a) const override;

    CloneSection const& section() const noexcept {
      return _section;
    }
    Block const& block(Element a) const {
      return _section.members().at(a);
    }
    // Throws Error when the block is not in the section.
    Element element(Block const& b) const;
    std::optional<Element> find(Block const& b) const;
    Element sigma_block(std::size_t op) const {
      return _sigma_blocks.at(op);
    }
    std::vector<NamedOp> const& signature_ops() const noexcept {
      return _sig_ops;
    }

    // The block [a^(k)(b_1^(k), ..., b_n^(k), p_{n+1}^(k), ..., p_k^(k))] for
    // an explicit k >= n and k >= every arity involved. The result need not
    // be a member of the section.
    Block q_padded(std::size_t n, Element a, std::span<Element const> bs, std::size_t k) const;

   private:
    CloneSection          _section;
    std::vector<NamedOp>  _sig_ops;
    Signature             _sig;
    std::vector<Element>  _sigma_blocks;
    std::string           _name;
  };

  using BlockAlgebraPtr = std::shared_ptr<BlockAlgebra const>;

  // Block algebra of the term clone of a, with a's operations as signature.
  BlockAlgebraPtr clv_block_algebra(FinAlgebra const& a, std::size_t cap);

  // q_n on blocks of any universe: canonical block of
  // a^(k)(b_1^(k), ..., b_n^(k), p_{n+1}^(k), ..., p_k^(k)) with the least
  // usable k.
  Block q_apply(Block const& a, std::vector<Block> const& bs, std::size_t n);

  // F(c)(s) = q_k(c, s_1, ..., s_k) where k is the support of s over the
  // thread i -> e(i). The stream carries element ids.
  Element rca_embed(CloneAlgebraHandle const& c, Element x, Stream const& s);
  // The stream with thread i -> e(i) and no overrides.
  Stream epsilon_stream(CloneAlgebraHandle const& c);

}  // namespace clonealg
