"""Comparing lower bounds on D~_alpha in terms of the trace distance.

B(alpha, T) is the tight trace-distance bound. At alpha = 1/2 it reduces to
-ln(1 - T^2), and it always sits above the quadratic bound
2 min(alpha, 1) T^2. We draw random qubit and qutrit pairs and print how
much of the divergence each bound accounts for.

    python demos/trace_distance_bounds.py
"""

import numpy as np

from petzrenyi import (
    RngStream,
    bound_B,
    pinsker_rhs,
    random_density,
    symmetric_petz_renyi,
    trace_distance,
)

rng = RngStream(2024)
print("dim  alpha  T        D~        B(a,T)    2min(a,1)T^2")
for dim in (2, 3):
    for _ in range(3):
        rho, sigma = random_density(dim, rng=rng), random_density(dim, rng=rng)
        T = trace_distance(rho, sigma)
        for a in (0.5, 1.0, 2.0):
            d = symmetric_petz_renyi(rho, sigma, a)
            print(f"{dim:<4} {a:<6} {T:.5f}  {d:.5f}  {bound_B(a, T):.5f}  {pinsker_rhs(a, T):.5f}")

# near T = 1 the tight bound diverges while the quadratic one stays bounded
T = np.array([0.5, 0.9, 0.99, 0.999])
print("\nT       B(1/2,T)   -ln(1-T^2)  2 min(1/2,1) T^2")
for t, b, q in zip(T, bound_B(0.5, T), pinsker_rhs(0.5, T)):
    print(f"{t:<7} {b:<10.6f} {-np.log1p(-t * t):<11.6f} {q:.6f}")
