"""Smoke test for the pywzcong extension module.

Build and install first:
    pip install --no-build-isolation ./crates/py
"""

import pywzcong


def main():
    assert pywzcong.decompose(13, 4) == (3, 1)
    assert pywzcong.decompose(31, 27) == (4, 2)
    assert pywzcong.special("R7", 5) == "77"
    assert pywzcong.special("E", 101, n=4) == "5"
    assert pywzcong.special("U", 101, n=4) == "22"

    assert pywzcong.sum("general", 7, a="0") == "1"
    assert pywzcong.sum("central-cube", 13, m=64, weight="inv:2,-1,1") == "671"

    r = pywzcong.check("T2.2", 13)
    assert r["status"] == "Pass" and (r["x"], r["y"]) == (3, 1), r
    r = pywzcong.check("T3.1", 11, a="-1/3")
    assert r["status"] == "Pass", r
    assert pywzcong.check("T8.4", 7)["status"] == "NotApplicable"

    rs = pywzcong.verify(["T2.*"], 5, 60)
    assert rs and all(r["status"] in ("Pass", "NotApplicable") for r in rs)

    ids = {s["id"] for s in pywzcong.catalog()}
    assert {"T2.1", "C13.1.i.1", "L3.1"} - ids == {"L3.1"}

    assert pywzcong.wz("L3.1", "1/5") == "Pass"
    for bad in (lambda: pywzcong.check("X1", 7), lambda: pywzcong.wz("L99", "1")):
        try:
            bad()
        except KeyError:
            pass
        else:
            raise AssertionError("expected KeyError")
    try:
        pywzcong.decompose(7, 4)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    print("pywzcong smoke test: ok")


if __name__ == "__main__":
    main()
