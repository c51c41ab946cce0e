#!/usr/bin/env python3
"""Regenerate share/test_vectors.json, the parity fixture consumed by both
the primary suite and the legacy-bindings suite.

Each case carries the legacy function name, plain-data arguments and the
expected result as produced by the primary library.  Samples are described
by (seed, n, mu, sigma, tau) and regenerated on each side through the
seeded ex-Gaussian sampler, so recorded fit results double as stream
parity checks.  Callables (zero, integral) are described by polynomial
coefficients, constant first.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

import exgtools as xg

OUT = Path(__file__).resolve().parents[1] / "share" / "test_vectors.json"

PARAM_GRID = [
    (500.0, 50.0, 100.0),
    (451.09, 47.33, 146.81),
    (872.59, 270.73, 317.05),
    (0.0, 1.0, 0.25),
    (-2.0, 0.5, 3.0),
]
LAMB_GRID = [0.1, 0.3, 0.5, 0.8, 0.95]
SAMPLES = {
    "rt2000": {"seed": 2024, "n": 2000, "mu": 500.0, "sigma": 50.0, "tau": 100.0},
    "rt600": {"seed": 77, "n": 600, "mu": 450.0, "sigma": 45.0, "tau": 150.0},
}
FIXED = {
    "tiny": [0.0, 0.0, 0.0, 4.0],
    "pair": [-1.0, 1.0],
    "line_x": [1.0, 2.0, 3.0, 4.0, 5.0],
    "line_y": [2.0, 1.0, 4.0, 3.0, 7.0],
}


def make_sample(spec) -> np.ndarray:
    p = xg.ExGaussParams(spec["mu"], spec["sigma"], spec["tau"])
    return xg.drand_exg(xg.RngStream(spec["seed"]), p, size=spec["n"])


def main() -> None:
    cases = []

    def add(fn, args, expect, **extra):
        cases.append({"id": f"{fn}-{len(cases):03d}", "fn": fn,
                      "args": args, "expect": expect, **extra})

    for mu, sigma, tau in PARAM_GRID:
        p = xg.ExGaussParams(mu, sigma, tau)
        st = xg.pars_to_stats(p)
        for x in (mu - sigma, mu + tau, mu + 3 * tau):
            add("exgauss", [x, mu, sigma, tau], xg.exgauss_pdf(x, p))
            add("exgauss_lt", [x, mu, sigma, tau], xg.exgauss_cdf(x, p))
        add("pars_to_stats", [mu, sigma, tau], [st.m, st.s, st.t])
        q = xg.stats_to_pars(st)
        add("stats_to_pars", [st.m, st.s, st.t], [q.mu, q.sigma, q.tau])
        add("gaussian", [mu + 0.5 * sigma, mu, sigma], xg.gauss_pdf(mu + 0.5 * sigma, mu, sigma))

    for lam in LAMB_GRID:
        add("exgauss_lamb", [0.5, lam], xg.exgauss_pdf_lamb(0.5, lam))
        add("exgauss_lamb_lt", [0.5, lam], xg.exgauss_cdf_lamb(0.5, lam))

    for alpha, (mu, sigma, tau) in [
        (0.001, PARAM_GRID[1]),
        (0.1, PARAM_GRID[0]),
        (0.5, PARAM_GRID[0]),
        (0.01, PARAM_GRID[2]),
        (0.25, PARAM_GRID[3]),
        (0.001, PARAM_GRID[4]),
    ]:
        p = xg.ExGaussParams(mu, sigma, tau)
        add("zalp_exgauss", [alpha, mu, sigma, tau], xg.zalp_exgauss(alpha, p))
    for alpha, lam in [(0.05, 0.5), (0.5, 0.1), (0.001, 0.9), (0.2, 0.3)]:
        add("zalp_exgauss_lamb", [alpha, lam], xg.zalp_exgauss_lamb(alpha, lam))

    st = xg.stats(FIXED["tiny"])
    add("stats", [FIXED["tiny"]], [st.m, st.s, st.t])
    st = xg.stats(FIXED["pair"])
    add("stats", [FIXED["pair"]], [st.m, st.s, st.t])
    add("correlation", [FIXED["line_x"], FIXED["line_y"]],
        xg.correlation(FIXED["line_x"], FIXED["line_y"]))
    add("correlation", [FIXED["line_x"], [2 * v + 1 for v in FIXED["line_x"]]], 1.0)
    pts = list(zip(FIXED["line_x"], FIXED["line_y"]))
    add("minsquare", [pts, 1], xg.minsquare(pts, 1))
    add("minsquare", [pts, 2], xg.minsquare(pts, 2))
    add("int_points_gauss", [0.0, 1.0, 1], xg.int_points_gauss(0.0, 1.0, 1))
    add("int_points_gauss", [-1.0, 1.0, 5], xg.int_points_gauss(-1.0, 1.0, 5))
    part = xg.int_points_gauss(0.0, 2.0, 8)
    fvals = [n**3 - n for n, _ in part]
    add("intsum", [fvals, part], xg.intsum(fvals, part))
    add("zero", [[-2.0, 0.0, 1.0], 0.0, 5.0], 2.0**0.5,
        note="root of poly x^2-2 in [0,5]")
    add("integral", [[0.0, 0.0, 3.0], 0.0, 2.0, 16], 8.0,
        note="integral of 3x^2 over [0,2]")
    groups = [[1.0, 2.0, 3.0, 4.0], [2.0, 3.0, 4.0, 5.0], [6.0, 7.0, 8.0, 9.0]]
    res = xg.anova(groups)
    add("ANOVA", [groups], [res.f, res.df_between, res.df_within, res.p])

    for name in ("drand", "drand_exp", "drand_gauss", "drand_exg"):
        stream = xg.RngStream(42)
        if name == "drand":
            vals = [xg.drand(stream) for _ in range(3)]
            args = []
        elif name == "drand_exp":
            vals = [xg.drand_exp(stream, 100.0) for _ in range(3)]
            args = [100.0]
        elif name == "drand_gauss":
            vals = [xg.drand_gauss(stream, 500.0, 50.0) for _ in range(3)]
            args = [500.0, 50.0]
        else:
            vals = [xg.drand_exg(stream, xg.ExGaussParams(500.0, 50.0, 100.0))
                    for _ in range(3)]
            args = [500.0, 50.0, 100.0]
        add(name, args, vals, seed=42, draws=3)

    for key, spec in SAMPLES.items():
        x = make_sample(spec)
        stt = xg.fit_stat(x)
        add("stat_fit", [], list(stt.params.as_tuple()), sample=key)
        ml = xg.max_lkhd(x)
        add("maxLKHD", [], list(ml.params.as_tuple()), sample=key)
        ls = xg.min_sqr(x)
        add("minSQR", [], list(ls.params.as_tuple()), sample=key,
            n_bins=ls.n_bins)
        v, g = xg.exg_lnlkhd(x, xg.ExGaussParams(spec["mu"], spec["sigma"], spec["tau"]))
        add("exgLKHD", [spec["mu"], spec["sigma"], spec["tau"]],
            [v, list(g)], sample=key)
        h = xg.histogram(x, 40)
        v, g = xg.exg_sqr(h, xg.ExGaussParams(spec["mu"], spec["sigma"], spec["tau"]))
        add("exgSQR", [spec["mu"], spec["sigma"], spec["tau"]],
            [v, list(g)], sample=key, n_bins=40)

    spec = SAMPLES["rt600"]
    x = make_sample(spec)
    h = xg.histogram(x, 30)
    add("histogram", [30],
        {"edges": h.edges.tolist(), "counts": h.counts.tolist(),
         "densities": h.densities.tolist(), "n_total": h.n_total},
        sample="rt600")
    sh = xg.stats_his(h)
    add("stats_his", [30], [sh.m, sh.s, sh.t], sample="rt600")

    OUT.parent.mkdir(exist_ok=True)
    payload = {
        "version": 1,
        "samples": SAMPLES,
        "n_cases": len(cases),
        "cases": cases,
    }
    OUT.write_text(json.dumps(payload, indent=1) + "\n")
    print(f"wrote {len(cases)} cases to {OUT}")


if __name__ == "__main__":
    main()
