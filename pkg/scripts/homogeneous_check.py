#!/usr/bin/env python3
"""Check the homogeneous solution family in Q[r]/(3r^4 - 6r^2 - (4j+1)) for a few j."""

import sys

from abeljac.solver import homogeneous_family_check

for j in map(int, sys.argv[1:] or ["1", "2", "3"]):
    h = homogeneous_family_check(j)
    print(f"j={j}  relation {h.relation}")
    print(f"  EDPol residual zero:        {h.edpol_zero}")
    print(f"  reference p2, p1 residuals: {h.reference_residuals_zero}")
    print(f"  forced p2, p1 residuals:    {h.derived_residuals_zero}")
    print(f"  forced lambda, lambda1:     {h.derived_lambdas}")
    print(f"  (j,1)-homogeneous pair:     {h.homogeneous}")
