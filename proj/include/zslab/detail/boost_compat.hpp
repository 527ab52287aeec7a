#pragma once

// Boost 1.74's is_byte_container trait hard-instantiates
// std::iterator_traits<C::const_iterator>::value_type, which is ill-formed
// under C++20 for types whose const_iterator is not an iterator (fixed
// upstream in 1.76). Pre-empt the header with a SFINAE-friendly equivalent.
// Must be included before any <boost/multiprecision/...> header.

#ifndef BOOST_IS_BYTE_CONTAINER_HPP
#define BOOST_IS_BYTE_CONTAINER_HPP

#include <iterator>
#include <type_traits>

namespace boost {
namespace multiprecision {
namespace detail {

template <class C, class = void>
struct is_byte_container : std::false_type {};

template <class C>
struct is_byte_container<
    C, std::void_t<typename std::iterator_traits<typename C::const_iterator>::value_type>> {
  using container_value_type = typename std::remove_cv<
      typename std::iterator_traits<typename C::const_iterator>::value_type>::type;
  static const bool value =
      std::is_integral<container_value_type>::value && (sizeof(container_value_type) == 1);
};

}  // namespace detail
}  // namespace multiprecision
}  // namespace boost

#endif  // BOOST_IS_BYTE_CONTAINER_HPP
