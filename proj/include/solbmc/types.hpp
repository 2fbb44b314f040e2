#ifndef SOLBMC_TYPES_HPP
#define SOLBMC_TYPES_HPP

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace solbmc {

/// Arbitrary-precision unsigned storage for bit-vector values. A value of
/// width w is always kept reduced to [0, 2^w).
using BigUint = boost::multiprecision::cpp_int;

/// Bit width of array indices and dynamic array lengths (Solidity uint256).
inline constexpr unsigned kIndexWidth = 256;
inline constexpr unsigned kAddressWidth = 160;

enum class TypeKind { Bool, UnsignedBv, SignedBv, Address, StaticArray, DynArray };

/// Solidity value types of the supported subset. Arrays nest one level: the
/// element is described by elem_kind/width.
struct SolType {
  TypeKind kind = TypeKind::Bool;
  unsigned width = 1;  // scalar width, or element width for arrays
  TypeKind elem_kind = TypeKind::Bool;
  std::uint64_t size = 0;  // StaticArray only

  static SolType boolean() { return {TypeKind::Bool, 1, TypeKind::Bool, 0}; }
  static SolType unsigned_bv(unsigned w) { return {TypeKind::UnsignedBv, w, TypeKind::Bool, 0}; }
  static SolType signed_bv(unsigned w) { return {TypeKind::SignedBv, w, TypeKind::Bool, 0}; }
  static SolType address() { return {TypeKind::Address, kAddressWidth, TypeKind::Bool, 0}; }
  static SolType static_array(const SolType& elem, std::uint64_t n) {
    return {TypeKind::StaticArray, elem.width, elem.kind, n};
  }
  static SolType dyn_array(const SolType& elem) {
    return {TypeKind::DynArray, elem.width, elem.kind, 0};
  }
  static SolType index() { return unsigned_bv(kIndexWidth); }

  bool is_bool() const { return kind == TypeKind::Bool; }
  bool is_array() const { return kind == TypeKind::StaticArray || kind == TypeKind::DynArray; }
  bool is_signed() const { return kind == TypeKind::SignedBv; }
  /// Unsigned, signed or address: anything encoded as a plain bit-vector.
  bool is_bitvector() const {
    return kind == TypeKind::UnsignedBv || kind == TypeKind::SignedBv ||
           kind == TypeKind::Address;
  }
  bool is_integer() const { return kind == TypeKind::UnsignedBv || kind == TypeKind::SignedBv; }

  SolType element() const { return {elem_kind, width, TypeKind::Bool, 0}; }

  friend bool operator==(const SolType&, const SolType&) = default;
};

std::string to_string(const SolType& type);

/// Parses an elementary Solidity type name ("uint8", "int", "bool",
/// "address"). Returns false for names outside the supported subset.
bool parse_elementary_type(const std::string& name, SolType& out);

// Two's-complement helpers over BigUint.
BigUint mask(unsigned width);
BigUint truncate(const BigUint& value, unsigned width);
bool sign_bit(const BigUint& value, unsigned width);
/// Signed interpretation of a width-bit pattern as a (possibly negative)
/// cpp_int.
boost::multiprecision::cpp_int to_signed(const BigUint& value, unsigned width);
/// Bit pattern of a (possibly negative) integer reduced to width bits.
BigUint from_signed(const boost::multiprecision::cpp_int& value, unsigned width);

/// Decimal rendering of a width-bit pattern under the given type, with hex
/// alongside when the width exceeds 64 bits.
std::string format_value(const BigUint& bits, const SolType& type);

}  // namespace solbmc

#endif  // SOLBMC_TYPES_HPP
