import math

import pyicelat


def main():
    info = pyicelat.domain_info("triangular", 4)
    assert info["n"] == 4 and info["interior_edges"] < info["edges"], info

    assert pyicelat.count_fill_ins("triangular", 4, boundary="sig:0,0,0,0,0,0") == 18
    assert pyicelat.count_fill_ins("triangular", 6, boundary="sig:+1,+1,0,-1,-1,0") == 1
    assert pyicelat.count_fill_ins("kagome", 4, boundary="sig:0,0,0,0,0,0") == 7141

    texts = pyicelat.fill_ins("triangular", 4, boundary="sig:0,0,0,0,0,0")
    assert len(texts) == len(set(texts)) == 18
    assert all(pyicelat.is_legal("triangular", 4, t) for t in texts)

    assert math.isclose(pyicelat.entropy(18, info["edges"]), math.log(18) / info["edges"])
    assert pyicelat.vertex_census("kagome") == (6, 3, 18)

    a = pyicelat.sample("triangular", 10, boundary="sig:0,0,0,0,0,0", seed=7, burn_in=10, window=50)
    b = pyicelat.sample("triangular", 10, boundary="sig:0,0,0,0,0,0", seed=7, burn_in=10, window=50)
    assert a["per_face"] == b["per_face"] and a["config"] == b["config"]
    assert a["total"] == sum(a["per_face"]) > 0
    assert pyicelat.is_legal("triangular", 10, a["config"])
    assert a["heatmap"].startswith(b"P5\n")

    frozen = pyicelat.sample("kagome", 6, boundary="sig:1,1,0,-1,-1,0", window=20)
    assert frozen["total"] == 0 and frozen["frozen_fraction"] == 1.0

    try:
        pyicelat.count_fill_ins("triangular", 4, boundary="sig:1,1,1,0,0,0")
    except ValueError:
        pass
    else:
        raise AssertionError("infeasible signature accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
