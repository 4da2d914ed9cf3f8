#ifndef TPTPNC_DETAIL_OVERLOADED_HPP_
#define TPTPNC_DETAIL_OVERLOADED_HPP_

namespace tptpnc::detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace tptpnc::detail

#endif  // TPTPNC_DETAIL_OVERLOADED_HPP_
