#pragma once

// Concrete countable groups with an exact multiplication oracle.
//
// An Element is a short tuple of exact rationals; which tuples are valid and
// how they multiply is decided by the GroupContext. Comparison of elements is
// lexicographic on coordinates (by value), which gives every finite set a
// canonical order.

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "monotile/error.hpp"
#include "monotile/rational.hpp"

namespace monotile {

class Element {
 public:
  using coords_type = boost::container::small_vector<Rational, 3>;

  Element() = default;
  explicit Element(coords_type c) : _coords(std::move(c)) {}
  Element(std::initializer_list<Rational> c) : _coords(c.begin(), c.end()) {}

  std::size_t width() const noexcept {
    return _coords.size();
  }
  Rational const& operator[](std::size_t i) const {
    return _coords[i];
  }
  Rational& operator[](std::size_t i) {
    return _coords[i];
  }
  coords_type const& coords() const noexcept {
    return _coords;
  }
  coords_type& coords() noexcept {
    return _coords;
  }

  // "(1,2)" for width != 1, "3/4" for width 1.
  std::string str() const;
  std::size_t hash() const noexcept;

  friend bool operator==(Element const& a, Element const& b) noexcept {
    return a._coords.size() == b._coords.size()
           && std::equal(a._coords.begin(), a._coords.end(), b._coords.begin());
  }
  friend std::strong_ordering operator<=>(Element const& a, Element const& b) noexcept {
    return std::lexicographical_compare_three_way(
        a._coords.begin(), a._coords.end(), b._coords.begin(), b._coords.end());
  }

 private:
  coords_type _coords;
};

struct ElementHash {
  std::size_t operator()(Element const& e) const noexcept {
    return e.hash();
  }
};

// Duplicate-free, canonically ordered list of elements.
class FiniteSubset {
 public:
  using const_iterator = std::vector<Element>::const_iterator;

  FiniteSubset() = default;
  // Sorts and removes duplicates.
  explicit FiniteSubset(std::vector<Element> elements);
  FiniteSubset(std::initializer_list<Element> elements)
      : FiniteSubset(std::vector<Element>(elements)) {}

  // Trusts the caller: `sorted` must be strictly increasing.
  static FiniteSubset from_sorted(std::vector<Element> sorted);

  std::size_t size() const noexcept {
    return _elements.size();
  }
  bool empty() const noexcept {
    return _elements.empty();
  }
  bool contains(Element const& g) const {
    return std::binary_search(_elements.begin(), _elements.end(), g);
  }
  // Position of g in canonical order, or size() if absent.
  std::size_t index_of(Element const& g) const;

  Element const& operator[](std::size_t i) const {
    return _elements[i];
  }
  const_iterator begin() const noexcept {
    return _elements.begin();
  }
  const_iterator end() const noexcept {
    return _elements.end();
  }
  std::vector<Element> const& elements() const noexcept {
    return _elements;
  }

  bool is_subset_of(FiniteSubset const& other) const;

  friend bool operator==(FiniteSubset const&, FiniteSubset const&) = default;

 private:
  std::vector<Element> _elements;
};

enum class GroupKind {
  lattice,
  cyclic,
  heisenberg3,
  pruefer,
  rationals,
  direct_product,
  finite_extension,
};

std::string_view to_string(GroupKind kind) noexcept;

class GroupContext {
 public:
  // lattice(0) is the trivial group.
  static GroupContext lattice(int d);
  static GroupContext cyclic(std::int64_t n);
  static GroupContext heisenberg3();
  static GroupContext pruefer(std::int64_t p);
  static GroupContext rationals();
  static GroupContext trivial() {
    return lattice(0);
  }
  static GroupContext direct_product(std::vector<GroupContext> factors);
  // A group `ambient` given together with a finite index subgroup `base`,
  // where base is the trivial group, ambient itself, or the first factor of a
  // direct product, and a list of right coset representatives of base.
  static GroupContext finite_extension(GroupContext ambient, GroupContext base,
                                       std::vector<Element> coset_reps);

  GroupKind kind() const noexcept;
  std::size_t width() const noexcept;
  int dimension() const;              // lattice
  std::int64_t modulus() const;       // cyclic n, pruefer p
  std::vector<GroupContext> const& factors() const;  // direct_product
  GroupContext const& ambient() const;                // finite_extension
  GroupContext const& base() const;                   // finite_extension
  FiniteSubset const& coset_reps() const;             // finite_extension

  bool is_abelian() const;
  bool is_trivial() const noexcept {
    return width() == 0;
  }

  Element identity() const;
  Element product(Element const& g, Element const& h) const;
  Element inverse(Element const& g) const;
  // Throws an encoding error unless g is a canonical element of this group.
  void validate(Element const& g) const;
  bool is_valid(Element const& g) const;

  // Standard generating set used for defect checks (empty for groups that
  // are not finitely generated: a few small elements are returned instead).
  std::vector<Element> generators() const;

  // Maps an element of base() into this group (finite_extension only).
  Element embed_base(Element const& u) const;

  friend bool operator==(GroupContext const& a, GroupContext const& b);

 private:
  struct Impl;
  std::shared_ptr<Impl const> _impl;
  explicit GroupContext(std::shared_ptr<Impl const> impl) : _impl(std::move(impl)) {}
};

// Parses "(1,2)", "1,2", "3/4" or "5"; validated against ctx.
Element parse_element(GroupContext const& ctx, std::string_view text);
// Elements separated by ';'.
std::vector<Element> parse_elements(GroupContext const& ctx, std::string_view text);

FiniteSubset translate(GroupContext const& ctx, Element const& g, FiniteSubset const& F);
FiniteSubset right_translate(GroupContext const& ctx, FiniteSubset const& F,
                             Element const& g);
// {a*b : a in A, b in B}, duplicates removed.
FiniteSubset product_set(GroupContext const& ctx, FiniteSubset const& A,
                         FiniteSubset const& B);
// Like product_set but returns false (leaving out untouched) if some product
// repeats, i.e. if the translates aF are not pairwise disjoint.
bool disjoint_product(GroupContext const& ctx, FiniteSubset const& A,
                      FiniteSubset const& B, FiniteSubset& out);
FiniteSubset inverse_set(GroupContext const& ctx, FiniteSubset const& F);
FiniteSubset set_union(FiniteSubset const& A, FiniteSubset const& B);
FiniteSubset set_difference(FiniteSubset const& A, FiniteSubset const& B);

}  // namespace monotile
