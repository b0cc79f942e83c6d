#pragma once

// Generated by generate.py; do not edit.

namespace oracle {

inline constexpr double diff_nn_k1_t1_w0 = 0.42586188314836165;  // expm, NN, k=1, t=1
inline constexpr double diff_nn_k1_t1_w1 = 0.3527566181903246;  // expm, NN, k=1, t=1
inline constexpr double diff_nn_k1_t1_w2 = 0.1569251608818302;  // expm, NN, k=1, t=1
inline constexpr double diff_nn_k1_t1_w5 = 0.002367596168473394;  // expm, NN, k=1, t=1
inline constexpr double diff_r2_k05_t2_w0 = 0.38711126849154787;  // expm, range-2, k=0.5, t=2
inline constexpr double diff_r2_k05_t2_w1 = 0.3321204526793906;  // expm, range-2, k=0.5, t=2
inline constexpr double diff_r2_k05_t2_w3 = 0.1420149895448312;  // expm, range-2, k=0.5, t=2
inline constexpr double free_nn_t1 = 0.308508322553671;  // Bessel formula
inline constexpr double scaled_N10_w0 = 0.526711968919422;  // expm, k_N = 1/(sqrt2 N), time N^3 t / sqrt2
inline constexpr double scaled_N10_w3 = 0.4334314169096037;  // expm, k_N = 1/(sqrt2 N), time N^3 t / sqrt2
inline constexpr double scaled_N10_w5 = 0.3356107734704185;  // expm, k_N = 1/(sqrt2 N), time N^3 t / sqrt2
inline constexpr double sticky_atom_th1p4142_t0p5 = 0.5231565837302468;  // Talbot inversion
inline constexpr double sticky_atom_th0p7071_t1p0 = 0.25539567631050575;  // Talbot inversion
inline constexpr double sticky_atom_th2p0000_t0p1 = 0.7903767636713649;  // Talbot inversion
inline constexpr double sticky_hit_thsqrt2_v0p5_t0p5 = 0.2935926955649821;  // hitting-time convolution
inline constexpr double sticky_hit_th1_v1_t2 = 0.16417616140725427;  // hitting-time convolution
inline constexpr double sticky_m2_th1_t1 = 0.5340134379739641;  // int_0^t (1 - atom)
inline constexpr double potential_r2_n1 = 0.8944271909999159;  // quadrature
inline constexpr double potential_r2_n2 = 1.105572809000084;  // quadrature
inline constexpr double potential_r2_n5 = 2.360679774997897;  // quadrature
inline constexpr double potential_skew_n3 = 1.7340432537316792;  // quadrature
inline constexpr double dual_m2_n5_k05 = 26.666666666666668;  // mpmath
inline constexpr double dual_m3_n3_k2 = 0.25;  // mpmath
inline constexpr double dual_m100_n150_k03 = 1.514154591297142e+42;  // mpmath
inline constexpr double bump07_int = 0.6399999999999999;  // quad
inline constexpr double bump07_l2 = 0.47738927738927733;  // quad
inline constexpr double bump07_dirichlet = 3.7996289424860854;  // quad
inline constexpr double limvar_g1p0_t0p5 = 0.3756727894760827;  // nested quad of the closed form
inline constexpr double limvar_alt_g1p0_t0p5 = 0.23964953435322003;  // nested quad of the (u, v) form
inline constexpr double limvar_chain_g1p0_t0p5 = 0.1639024902233569;  // nested quad, theta = sqrt2 gamma
inline constexpr double limvar_g0p5_t0p1 = 0.05312294214974593;  // nested quad of the closed form
inline constexpr double limvar_alt_g0p5_t0p1 = 0.01440568458357583;  // nested quad of the (u, v) form
inline constexpr double limvar_chain_g0p5_t0p1 = 0.024298599733806325;  // nested quad, theta = sqrt2 gamma
inline constexpr double finvar_N10_g1_t0p1 = 0.11808282096011563;  // covariance sum with expm
inline constexpr double finvar_N8_g0p5_t0p3_stat = 2.3088203435596424;  // stationary sigma = rho^2 (k+1)/k
inline constexpr double form_E_r2_N8_g0p7 = 74.20363312623857;  // direct assembly
inline constexpr double form_g[] = {-0.24446425334302457,0.09318843128504772,0.05948171874946784,0.22547786817512172,-0.5224480211904938,0.8571393887420631,0.25706439337595666,0.3227610599271946,0.9283933156781539,-0.8361443686823087,0.6114276133177068};
inline constexpr double dualform_dipole_nn_N4 = 0.0078125;  // Fourier quadrature
inline constexpr double dualform_quad_r2_N6 = 0.01591685796353821;  // Fourier quadrature
inline constexpr double nb_n3_rho2_k0p5 = 0.07155417527999329;  // mpmath
inline constexpr double nb_n0_rho1_k3 = 0.421875;  // mpmath

}  // namespace oracle
