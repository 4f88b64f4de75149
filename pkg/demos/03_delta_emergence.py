"""The interface concentration: a surface layer emerges as rho -> 0.

For an active multipole source hidden inside the cloak, the normal component
of the layer field concentrates on the interface sphere as the
regularisation shrinks.  Paired against a radial test profile phi, the layer
integral tends to sigma * phi(1) with a closed-form strength sigma, while
the interior integral tends to its own measurable limit; the interior
normal trace dies at the interface and the tangential trace does not.
"""

import csv

from cloaksim import modal, weak_limit
from cloaksim.geometry import CloakParams
from cloaksim.weak_limit import RadialTestFunction

OMEGA = 1.0
R1 = 0.5
source = modal.SourceCoeffs(entries={(1, 0): (0j, 1 + 0j)}, r1=R1)
phi = RadialTestFunction.polynomial_bump([(1, 0)], 0.5, 1.5)
params0 = CloakParams(rho=0.5, omega=OMEGA, r1=R1)

beta0, d_pref, sigma = modal.limit_coeffs(1, 1.0, params0)
phi_at_interface = phi.profiles[(1, 0)][0](1.0)
print("single dipole mode (n=1, m=0), unit strength, omega = 1")
print(f"predicted surface strength sigma        = {sigma:.10f}")
print(f"sigma (no cross-product shortcut)       = "
      f"{modal.sigma_uncollapsed(1, 1.0, params0):.10f}")
print(f"surface term sigma * phi(1)             = {sigma * phi_at_interface:.10f}")

measurable, surface = weak_limit.predicted_limit_parts(source, phi, params0)
print(f"measurable interior part of the limit   = {measurable:.10f}")
print(f"predicted total pairing limit           = {measurable + surface:.10f}")

print()
print("=== sweep: layer pairing against the surface term ===")
print("   rho      layer pairing (im)      |error|    ")
rows = []
target = sigma * phi_at_interface
for rho in (3e-2, 1e-2, 3e-3, 1e-3):
    solution = modal.solve_source(
        source, None, CloakParams(rho=rho, omega=OMEGA, r1=R1))
    ext = weak_limit.pairing_exterior_normal(solution, phi, tol=1e-10)
    interior = weak_limit.pairing_interior(solution, phi, tol=1e-10)
    rows.append((rho, ext, interior))
    print(f"  {rho:7.0e}   {ext.imag:+.10f}   {abs(ext - target):10.3e}")
print(f"            target: {target.imag:+.10f} (first-order in rho)")

print()
print("=== one-sided traces at the interface ===")
tr1 = weak_limit.interior_trace_normal(source, params0, 1.0)[(1, 0)]
tr09 = weak_limit.interior_trace_normal(source, params0, 0.9)[(1, 0)]
t1, t2 = weak_limit.tangential_trace_limit(source, params0)[(1, 0)]
print(f"limit normal trace at r=1.0: {abs(tr1):.2e} (exact cancellation)")
print(f"limit normal trace at r=0.9: {tr09:.6f}")
print(f"limit tangential traces: T1 = {t1:.6f} (nonzero!), T2 = {t2}")

with open("delta_emergence.csv", "w", newline="\n") as fh:
    w = csv.writer(fh)
    w.writerow(["rho", "layer_re", "layer_im", "interior_re", "interior_im"])
    for rho, ext, interior in rows:
        w.writerow([f"{v:.17g}" for v in
                    (rho, ext.real, ext.imag, interior.real, interior.imag)])
print()
print("wrote delta_emergence.csv")
