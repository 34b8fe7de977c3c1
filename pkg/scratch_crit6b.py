"""Criterion 6 with residual-driven escalation on the composed map."""
import math
import numpy as np
from circletau.maps import CircleMap
from scratch_uniformizer import solve_tau


def poly_extrap(ys, vals, order):
    T = [np.asarray(vals, dtype=complex)]
    for m in range(1, order + 1):
        prev = T[-1]
        cur = np.empty(len(vals) - m, dtype=complex)
        for l in range(len(cur)):
            r = ys[l] / ys[l + m]
            cur[l] = prev[l + 1] + (prev[l + 1] - prev[l]) / (r - 1.0)
        T.append(cur)
    return T[order][-1], abs(T[order][-1] - T[order - 1][-1])


def tau_bar(fm, ladder, resid_target=1e-9, cap=512, order=3, label=""):
    taus = []
    for y in ladder:
        N = int(min(cap, max(32, 1.8 / max(y, 7e-3))))
        while True:
            tau, resid, cond, _ = solve_tau(fm, 1j * y, N=N)
            if resid <= resid_target or N >= cap:
                break
            N = min(cap, int(N * 1.6))
        print(f"   {label} y={y:.5f} N={N} resid={resid:.1e}")
        taus.append(tau)
    return poly_extrap(np.array(ladder), taus, order)


g = CircleMap(0.5, (), (0.0, 0.05))
h2 = g.iterate(2)
ladder = [0.25 / 2**l for l in range(7)]
tb_g, err_g = tau_bar(g, ladder, label="f ")
tb_h, err_h = tau_bar(h2, ladder, label="f2")
print(f"tau(f)  = {tb_g:.10f} err~{err_g:.1e}")
print(f"tau(f2) = {tb_h:.10f} err~{err_h:.1e}")
print(f"2tau(f) = {2*tb_g:.10f}")
print(f"im diff = {abs(tb_h.imag - 2*tb_g.imag):.2e}")
for order in (4, 5):
    a, ea = poly_extrap(np.array(ladder), [], order) if False else (None, None)
# higher order on fresh data of f2
taus = []
for y in ladder:
    N = int(min(512, max(32, 1.8 / max(y, 7e-3))))
    while True:
        tau, resid, cond, _ = solve_tau(h2, 1j * y, N=N)
        if resid <= 1e-9 or N >= 512:
            break
        N = min(512, int(N * 1.6))
    taus.append(tau)
for order in (3, 4, 5):
    v, e = poly_extrap(np.array(ladder), taus, order)
    print(f"order {order}: tau(f2) = {v:.10f} gap_to_2tau = {abs(v.imag - 2*tb_g.imag):.2e}")
