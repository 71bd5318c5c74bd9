#pragma once

#include <functional>
#include <vector>

#include "tfp/rational.hpp"

namespace tfp {

// binom(pk+1, k) / (pk+1).
Integer fuss_catalan(long p, long k);

// Same formula read with a rational p: the generalized binomial
// (pk+1)(pk)...(pk-k+2) / k! divided by pk+1.
Rational fuss_catalan_rational(const Rational& p, long k);

// (1/b) binom(n-1, b-1) binom(qn, b-1) for integer q. For half-integer q the
// count is zero at odd n and equals fuss_narayana(2q, n/2, b) at even n.
Integer fuss_narayana(const Rational& q, long n, long b);
// Sum over b of fuss_narayana(q, n, b).
Integer nc_multiple_total(const Rational& q, long n);

using Partition = std::vector<std::vector<int>>;  // blocks of 0-based points, sorted

// Non-crossing partitions of {0, ..., qn-1} whose block sizes are multiples
// of q (of 2q when q is a half-integer). Empty when qn is not an integer.
std::vector<Partition> enumerate_nc_multiple(const Rational& q, long n);
void for_each_nc_multiple(const Rational& q, long n, const std::function<void(const Partition&)>& f);
// counts[b] = number of such partitions with b blocks.
std::vector<long long> count_nc_multiple_by_blocks(const Rational& q, long n);

}  // namespace tfp
