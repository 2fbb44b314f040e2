#include "solbmc/types.hpp"

#include <sstream>

namespace solbmc {

using boost::multiprecision::cpp_int;

std::string to_string(const SolType& type) {
  switch (type.kind) {
    case TypeKind::Bool: return "bool";
    case TypeKind::UnsignedBv: return "uint" + std::to_string(type.width);
    case TypeKind::SignedBv: return "int" + std::to_string(type.width);
    case TypeKind::Address: return "address";
    case TypeKind::StaticArray:
      return to_string(type.element()) + "[" + std::to_string(type.size) + "]";
    case TypeKind::DynArray: return to_string(type.element()) + "[]";
  }
  return "?";
}

bool parse_elementary_type(const std::string& name, SolType& out) {
  if (name == "bool") {
    out = SolType::boolean();
    return true;
  }
  if (name == "address" || name == "address payable") {
    out = SolType::address();
    return true;
  }
  bool is_signed = false;
  std::string digits;
  if (name.rfind("uint", 0) == 0) {
    digits = name.substr(4);
  } else if (name.rfind("int", 0) == 0) {
    is_signed = true;
    digits = name.substr(3);
  } else {
    return false;
  }
  unsigned width = 256;
  if (!digits.empty()) {
    if (digits.find_first_not_of("0123456789") != std::string::npos) return false;
    width = static_cast<unsigned>(std::stoul(digits));
  }
  if (width < 8 || width > 256 || width % 8 != 0) return false;
  out = is_signed ? SolType::signed_bv(width) : SolType::unsigned_bv(width);
  return true;
}

BigUint mask(unsigned width) { return (BigUint(1) << width) - 1; }

BigUint truncate(const BigUint& value, unsigned width) { return value & mask(width); }

bool sign_bit(const BigUint& value, unsigned width) {
  return width > 0 && bit_test(value, width - 1);
}

cpp_int to_signed(const BigUint& value, unsigned width) {
  if (sign_bit(value, width)) return cpp_int(value) - (cpp_int(1) << width);
  return value;
}

BigUint from_signed(const cpp_int& value, unsigned width) {
  cpp_int modulus = cpp_int(1) << width;
  cpp_int r = value % modulus;
  if (r < 0) r += modulus;
  return r;
}

std::string format_value(const BigUint& bits, const SolType& type) {
  if (type.is_bool()) return bits == 0 ? "false" : "true";
  std::ostringstream out;
  if (type.is_signed()) {
    out << to_signed(bits, type.width);
  } else {
    out << bits;
  }
  if (type.width > 64) out << " (0x" << std::hex << bits << ")";
  return out.str();
}

}  // namespace solbmc
