#pragma once

namespace kprime {

/// Which prime-factor counting function a computation refers to:
/// omega(n) counts distinct prime divisors, big_omega(n) counts prime
/// divisors with multiplicity.
enum class count_flavor { omega, big_omega };

}  // namespace kprime
