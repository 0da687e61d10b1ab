#pragma once
// Property suites behind `qqg verify`. Each returns one CheckResult per identity.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qqg/report.hpp"

namespace qqg {

struct ContactSuiteOptions {
  std::size_t points = 200;
  std::uint64_t seed = 0xc0ffee;
  double fd_threshold = 1e-6;
  double analytic_threshold = 1e-8;
  double adjoint_threshold = 1e-6;
};

struct HopfSuiteOptions {
  std::size_t points = 100;
  std::uint64_t seed = 0x5ca1ab1e;
  std::vector<double> alpha2 = {0.5, 1.0, 4.0};
  double eigen_threshold = 1e-4;
  double identity_threshold = 1e-6;
};

struct SpectralSuiteOptions {
  int lmax = 24;
  std::uint64_t seed = 0xbeef;
  int trials = 4;
};

VerifyReport run_contact_suite(const ContactSuiteOptions& opt = {});
VerifyReport run_hopf_suite(const HopfSuiteOptions& opt = {});
VerifyReport run_spectral_suite(const SpectralSuiteOptions& opt = {});

}  // namespace qqg
