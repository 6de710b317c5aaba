"""Smoke test for the conductor_py extension module.

Build it first:  pip install --no-build-isolation ./crates/py
"""

import conductor_py as cp

gauss = cp.QuadField(-1)
assert gauss.discriminant == -4

three = gauss.ideal("(3)")
v = gauss.check(three)
assert v.criterion == "cor212" and v.is_conductor is True, v
assert v.primes[0]["condition"] == "a"

p2 = gauss.prime(2, 1)
assert p2.basis == [[1, 1], [0, 2]] and p2.index == 2
v = gauss.check(p2, criterion="brute")
assert v.is_conductor is False and v.witness
assert gauss.is_conductor(p2) is False

assert gauss.splitting(5) == "split"
assert [str(m) for m in gauss.primes_above(5)] == ["[[1,2;0,5]]", "[[1,3;0,5]]"]
assert (-2, 1) in gauss.ideal("(5, w - 2)") and (2, 1) not in gauss.ideal("(5, w - 2)")
assert gauss.factor(gauss.ideal("(10)")) == [(p2, 2), (gauss.prime(5, 1), 1), (gauss.prime(5, 2), 1)]

found = [c.index for c in gauss.conductors(25)]
assert found == [1, 4, 9, 16, 25], found

golden = cp.QuadField(5)
four = golden.ideal("(4)")
assert golden.check(four, criterion="cor28", order_f=2).is_conductor is False
assert golden.check(four, criterion="prop29", order_f=2).decision == "hypothesis_failed"
assert golden.ideal("(2)") in [c for c in golden.conductors(16, order_f=2)]

try:
    gauss.check(golden.ideal("(2)"))
except ValueError:
    pass
else:
    raise AssertionError("ideal from another field accepted")

try:
    gauss.ideal("(4")
except ValueError as e:
    assert "offset 2" in str(e)

report = cp.crossval(fields=[-1, 5], max_index=40, orders=[2])
assert report["mismatches"] == [] and report["unsound"] == []
mutated = cp.crossval(fields=[-1], max_index=20, mutation="flip-b")
assert mutated["mismatches"], "mutation went unnoticed"

suites = cp.run_props("double_colon", cases=10)
assert suites[0]["failures"] == []
assert len(cp.SUITES) == 11

print("conductor_py smoke test passed")
