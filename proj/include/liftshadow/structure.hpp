#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <utility>
#include <vector>

#include "liftshadow/signature.hpp"

namespace liftshadow {

using Element = std::uint32_t;

/// Read-only view over the tuples of one relation, stored back to back.
class TupleRange {
 public:
  class iterator {
   public:
    using iterator_category = std::random_access_iterator_tag;
    using value_type = std::span<const Element>;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = value_type;

    iterator() = default;
    iterator(const Element* p, std::size_t arity) : p_(p), arity_(arity) {}
    value_type operator*() const { return {p_, arity_}; }
    value_type operator[](difference_type i) const { return {p_ + i * static_cast<difference_type>(arity_), arity_}; }
    iterator& operator++() { p_ += arity_; return *this; }
    iterator operator++(int) { auto t = *this; ++*this; return t; }
    iterator& operator--() { p_ -= arity_; return *this; }
    iterator& operator+=(difference_type d) { p_ += d * static_cast<difference_type>(arity_); return *this; }
    iterator operator+(difference_type d) const { auto t = *this; return t += d; }
    difference_type operator-(const iterator& o) const {
      return arity_ == 0 ? 0 : (p_ - o.p_) / static_cast<difference_type>(arity_);
    }
    bool operator==(const iterator& o) const { return p_ == o.p_; }
    auto operator<=>(const iterator& o) const { return p_ <=> o.p_; }

   private:
    const Element* p_ = nullptr;
    std::size_t arity_ = 0;
  };

  TupleRange(const std::vector<Element>& data, std::size_t arity) : data_(&data), arity_(arity) {}
  iterator begin() const { return {data_->data(), arity_}; }
  iterator end() const { return {data_->data() + data_->size(), arity_}; }
  std::size_t size() const { return arity_ == 0 ? 0 : data_->size() / arity_; }
  bool empty() const { return data_->empty(); }
  std::span<const Element> operator[](std::size_t i) const { return {data_->data() + i * arity_, arity_}; }

 private:
  const std::vector<Element>* data_;
  std::size_t arity_;
};

/// A finite relational structure over elements 0..size()-1. Immutable;
/// tuples of each relation are kept sorted and duplicate-free.
class Structure {
 public:
  Structure() = default;
  /// Empty relations over `size` elements.
  Structure(Signature sig, std::size_t size);

  const Signature& signature() const { return sig_; }
  std::size_t size() const { return size_; }
  TupleRange tuples(std::size_t relation) const { return {data_[relation], sig_[relation].arity}; }
  std::size_t tuple_count(std::size_t relation) const { return tuples(relation).size(); }
  std::size_t tuple_count() const;
  bool contains(std::size_t relation, std::span<const Element> tuple) const;
  bool contains(std::size_t relation, std::initializer_list<Element> tuple) const {
    return contains(relation, std::span<const Element>(tuple.begin(), tuple.size()));
  }

  /// Same data with a different signature of matching names and arities.
  Structure with_signature(Signature sig) const;

  bool operator==(const Structure&) const = default;

 private:
  friend class StructureBuilder;
  Signature sig_;
  std::size_t size_ = 0;
  std::vector<std::vector<Element>> data_;
};

/// Accumulates tuples; build() sorts, removes duplicates and validates the
/// symmetric-closure invariant.
class StructureBuilder {
 public:
  StructureBuilder(Signature sig, std::size_t size);

  StructureBuilder& add(std::size_t relation, std::span<const Element> tuple);
  StructureBuilder& add(std::size_t relation, std::initializer_list<Element> tuple) {
    return add(relation, std::span<const Element>(tuple.begin(), tuple.size()));
  }
  /// Adds the tuple and its reversal.
  StructureBuilder& add_symmetric(std::size_t relation, std::span<const Element> tuple);
  StructureBuilder& add_symmetric(std::size_t relation, std::initializer_list<Element> tuple) {
    return add_symmetric(relation, std::span<const Element>(tuple.begin(), tuple.size()));
  }
  /// Closes every symmetric relation under reversal before validation.
  StructureBuilder& close_symmetric();

  std::size_t size() const { return out_.size_; }
  Structure build() &&;
  Structure build() const&;

 private:
  Structure out_;
};

// Factories for the shapes that keep recurring.
Structure make_digraph(std::size_t n, std::initializer_list<std::pair<Element, Element>> arcs);
Structure make_digraph(std::size_t n, const std::vector<std::pair<Element, Element>>& arcs);
/// Undirected graph: symmetric relation "E" with both orientations.
Structure make_graph(std::size_t n, const std::vector<std::pair<Element, Element>>& edges);
Structure directed_path(std::size_t arcs);
Structure directed_cycle(std::size_t n);
Structure transitive_tournament(std::size_t n);
Structure complete_graph(std::size_t n);
Structure cycle_graph(std::size_t n);
Structure looped_vertex(bool symmetric = false);
/// One element carrying every possible tuple: the terminal object.
Structure terminal_structure(const Signature& sig);

// Constructions.
/// Substructure induced on `elements`; element i of the result is elements[i].
Structure induced_substructure(const Structure& s, std::span<const Element> elements);
/// Renames element e to perm[e]; perm must be a bijection onto 0..size-1.
Structure relabel(const Structure& s, std::span<const Element> perm);
/// Categorical product; element (a, b) is a * b.size() + b.
Structure product(const Structure& a, const Structure& b);
Structure disjoint_union(const Structure& a, const Structure& b);
/// Connected components of the incidence multigraph, each as an induced
/// substructure, ordered by least element.
std::vector<Structure> components(const Structure& s);
std::vector<std::vector<Element>> component_elements(const Structure& s);

}  // namespace liftshadow
