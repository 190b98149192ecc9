"""Smoke test for the Python extension.

Build first:
    cargo build -p widthproof-py --release --features extension-module
then run:
    python3 python/smoke_test.py
The script copies target/release/libwidthproof_py.so next to itself as
widthproof_py.so so it imports without a packaging step.
"""

import json
import pathlib
import shutil
import sys

HERE = pathlib.Path(__file__).resolve().parent
ROOT = HERE.parent


def load():
    built = ROOT / "target" / "release" / "libwidthproof_py.so"
    if not built.exists():
        sys.exit(f"missing {built}; build the extension first")
    target = HERE / "widthproof_py.so"
    shutil.copyfile(built, target)
    sys.path.insert(0, str(HERE))
    import widthproof_py

    return widthproof_py


def main():
    wp = load()

    prop = wp.reed_property(2)
    assert "ChromaticNumber_AtMost(3)" in prop, prop

    out = json.loads(wp.prove(prop, 2))
    assert out["verdict"] == "inclusion-holds", out
    assert out["stats"]["states"] == 38, out["stats"]

    tri = (ROOT / "fixtures" / "triangle_free_3col.prop").read_text()
    out = json.loads(wp.prove(tri, 3))
    assert out["verdict"] == "inclusion-holds", out

    fig2 = (ROOT / "fixtures" / "figure2.adj").read_text()
    assert wp.chromatic_number(fig2) == 4

    term = "IntroEdge(1,2)(IntroVertex(2)(IntroVertex(1)(Leaf)))"
    ev = json.loads(wp.eval(term, prop, 2))
    assert ev["value"] is True and len(ev["flags"]) == 4, ev

    try:
        wp.prove(prop, 2, mode="bw")
    except ValueError:
        pass
    else:
        raise AssertionError("bad mode accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
