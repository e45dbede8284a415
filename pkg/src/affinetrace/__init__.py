"""
Exact algebra for affine Hecke cocenters and the shuffle algebra.

Modules:

* `ring`: Laurent polynomials in q and in q1, q2; rational functions in q1, q2.
* `affine_weyl`: extended affine permutations, lengths, Newton points, convex paths.
* `hecke`: the extended affine Hecke algebra in the T basis.
* `cocenter`: reduction to the convex-path basis of the cocenter.
* `shuffle`: symmetric Laurent polynomials, the shuffle product, R_d and H_{m,n}.
* `tilde_a`: relation instances for the generators ℰ_d and their evaluations.
* `cli`: the ``affinetrace`` command.
"""

__version__ = "0.1.0"
