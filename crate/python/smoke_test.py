"""Smoke test for the trnplace Python extension.

Build and install first:

    pip install maturin
    maturin develop --release -m crates/py/Cargo.toml   # inside a virtualenv
    # or: maturin build --release -m crates/py/Cargo.toml && pip install target/wheels/*.whl

then run ``python python/smoke_test.py``.
"""

import math

import trnplace


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def main():
    # Reliability-weighted link cost.
    assert close(trnplace.modified_weight(0.2, 0.5, 0.8, alpha=0.5), 1.35)
    try:
        trnplace.modified_weight(0.2, 0.4, 0.8)
    except ValueError:
        pass
    else:
        raise AssertionError("reliability below 0.5 must be rejected")

    # Centralities on small graphs.
    assert trnplace.betweenness(3, [(0, 1, 1.0), (1, 2, 1.0)]) == [0.0, 1.0, 0.0]
    vec, lam = trnplace.eigenvector(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)], mode="unweighted")
    assert close(vec[0], 1 / math.sqrt(2)) and close(lam, math.sqrt(3))

    # Coverage on a 3-node path.
    assert close(trnplace.cpc(3, [(0, 1, 1.0), (1, 2, 1.0)], [1]), 100 / 3)
    assert trnplace.cpc(3, [(0, 1, 1.0), (1, 2, 1.0)], [1], endpoints="include") == 100.0

    # Full pipeline on the bundled topology.
    topo = trnplace.Topology.metro28()
    assert (topo.node_count, topo.link_count) == (28, 52)
    ranking = trnplace.rank(topo, trials=50, seed=42)
    assert sorted(ranking.order()) == list(range(28))
    assert ranking.to_csv().startswith("rank,node,label,total_score,mean_bc,mean_ec\n")
    again = trnplace.rank(topo, trials=50, seed=42)
    assert ranking.entries() == again.entries()

    curve = trnplace.cpc_curve(topo, ranking.order(), k_max=10, trials=50)
    coverage = [c for _, c in curve]
    assert all(a <= b for a, b in zip(coverage, coverage[1:]))

    cmp = trnplace.compare_baselines(topo, k_max=14, trials=50)
    assert len(cmp["rows"]) == 14
    k8 = cmp["rows"][7]
    print(f"K=8 composite {k8[1]:.2f}% degree {k8[2]:.2f}% delta {k8[3]:+.2f} pts")

    edgelist = trnplace.Topology.from_edgelist("a b 10\nb c 5\n")
    assert edgelist.labels == ["a", "b", "c"]
    try:
        trnplace.Topology.from_edgelist("a b 1\nb c 1\nc a 1\nx y 1\ny z 1\nz x 1\n")
    except ValueError as e:
        assert "disconnected" in str(e)
    else:
        raise AssertionError("disconnected topology must be rejected")

    print("smoke test passed")


if __name__ == "__main__":
    main()
