"""Effective arithmetic of twisted Fermat curves X^p + Y^p = delta.

Subpackage map:
  cyclotomic      exact Z[zeta_r] arithmetic, primes of Z[omega]
  ffield          finite fields, multiplicative characters, Gauss/Jacobi sums
  kernels         hot counting/search loops (compiled when available)
  localzeta       point counts, Jacobi-sum local L-polynomials, torsion bounds
  symbols         cubic residue symbol and its ray-class extension
  hecke           Grossencharacter coefficients and smoothed central L-values
  doubledirichlet coefficient calculus of the two-variable series
  certify         the no-rational-points certifier and batch scanner
"""

__version__ = "0.1.0"

NORMALIZATION_FINGERPRINT = (
    "zeta3=exp(2*pi*i/3);primary=2mod3;split-gen-omega-coeff>0;"
    "chi_w(x)=x^((Nw-1)/r) mod w;smoothing=exp(-2*pi*x)"
)
