import os

import pytest
from mpmath import libmp, mp

from orbita import bounds
from orbita.bounds import (
    INCONCLUSIVE,
    SATISFIED,
    VIOLATED,
    BoundFormula,
    beukers_schlickewei,
    canci_c,
    compare,
    decimal_str,
    ess,
    evaluate_bound,
    k_run,
    ln_interval,
    morton_silverman,
    narkiewicz_pezda_orbit,
    np_tail,
    pezda_br,
    pgl2_order,
    two_ways_ideals,
    working_precision,
)

# oracle values computed independently with plain 210-digit mpf arithmetic;
# 100 digits kept, far beyond the 60-digit enclosure width, so the interval
# evaluation must bracket them strictly
ORACLES = {
    "c1": "1000000000012.217437006463208873763561354525725308658970101807481371883853989898654994794721472518034",
    "c2": "2000000000033.517458905912072956316174928711107989558637282914628362510559510052990986045149834064657",
    "ms11": "18.31899132563001947999788165153329236058362262690169693053185728801037389514328105085753389900457756",
    "ms01": "16.04834510238360567780061859661837801752344835707678052584614440544645364602935432860038643220100538",
    "pbr21": "12.03625882678770425835046394746378351314258626780758539438460830408484023452201574645028982415075403",
    "npo11": "722.4185058039808371115277520666438580024412698057551899258594081278295314697357503446519670588525814",
}


def _encloses(value, oracle_str):
    mp.dps = 120
    oracle = mp.mpf(oracle_str)
    assert value.ln_lower <= oracle <= value.ln_upper
    assert abs(value.ln_upper - oracle) / oracle < 1e-6
    assert abs(value.ln_lower - oracle) / oracle < 1e-6


def test_canci_c_against_oracle():
    _encloses(evaluate_bound(canci_c(1)), ORACLES["c1"])
    _encloses(evaluate_bound(canci_c(2)), ORACLES["c2"])


def test_morton_silverman_against_oracle():
    _encloses(evaluate_bound(morton_silverman(1, 1)), ORACLES["ms11"])
    _encloses(evaluate_bound(morton_silverman(0, 1)), ORACLES["ms01"])


def test_pezda_br_against_oracle():
    _encloses(evaluate_bound(pezda_br(2, 1)), ORACLES["pbr21"])


def test_narkiewicz_pezda_orbit_against_oracle():
    _encloses(evaluate_bound(narkiewicz_pezda_orbit(1, 1)), ORACLES["npo11"])


def test_exact_small_bounds():
    assert evaluate_bound(pgl2_order(1)).exact == 6
    assert evaluate_bound(pgl2_order(3)).exact == 38
    assert evaluate_bound(beukers_schlickewei(2)).exact == 16777216
    assert evaluate_bound(beukers_schlickewei(0)).exact == 256


def test_k_run_exact_and_display():
    v = evaluate_bound(k_run(1))
    assert v.exact == 65536
    # the closed form records the discrepancy between statement and proof
    assert "2^(16 s)" in v.exact_form and "2^(16^s)" in v.exact_form


def test_np_tail_log_value():
    # ln(e^(10^12 s) - 2) is a hair under 10^12 s; the upper rounding may equal it
    v = evaluate_bound(np_tail(3))
    mp.dps = 80
    target = mp.mpf(3) * mp.mpf(10) ** 12
    assert v.ln_upper <= target
    assert target - v.ln_lower < 1


def test_ess_and_two_ways_are_exact_integers_in_log_space():
    assert evaluate_bound(ess(3, 3)).ln_upper == 18**9 * 4
    assert evaluate_bound(ess(3, 3)).ln_lower == 18**9 * 4
    assert evaluate_bound(two_ways_ideals(1)).ln_upper == 18**9
    assert evaluate_bound(two_ways_ideals(2)).ln_upper == 18**9 * 4


def test_outward_rounding_nests_with_precision():
    # the 60-digit enclosure must contain the 200-digit one
    for formula in (canci_c(3), morton_silverman(2, 2), pezda_br(1, 1),
                    narkiewicz_pezda_orbit(2, 1), np_tail(1)):
        coarse = evaluate_bound(formula, 60)
        fine = evaluate_bound(formula, 200)
        assert coarse.ln_lower <= fine.ln_lower
        assert fine.ln_upper <= coarse.ln_upper
        assert fine.ln_lower <= fine.ln_upper


def test_monotone_in_parameters():
    def up(f):
        return evaluate_bound(f).ln_upper

    assert up(canci_c(1)) < up(canci_c(2)) < up(canci_c(5))
    assert up(morton_silverman(0, 1)) < up(morton_silverman(1, 1))
    assert up(morton_silverman(1, 1)) < up(morton_silverman(1, 2))
    assert up(pezda_br(1, 1)) < up(pezda_br(2, 1)) < up(pezda_br(2, 2))
    assert up(np_tail(1)) < up(np_tail(2))


def test_compare_directions():
    c1 = evaluate_bound(canci_c(1))
    assert compare(3, c1) == SATISFIED
    ms = evaluate_bound(morton_silverman(1, 1))
    assert compare(3, ms) == SATISFIED
    # e^18.319 < 10^8, so 10^9 certifiably violates
    assert compare(10**9, ms) == VIOLATED
    assert compare(1, evaluate_bound(np_tail(1))) == SATISFIED


def test_compare_exact_path():
    pgl = evaluate_bound(pgl2_order(1))
    assert compare(6, pgl) == SATISFIED
    assert compare(7, pgl) == VIOLATED
    with pytest.raises(ValueError):
        compare(0, pgl)


def test_compare_inconclusive_band():
    # a bound whose ln_upper falls strictly inside the enclosure of ln(n)
    # can be decided in neither direction
    from orbita.bounds import BoundValue

    lo, hi = ln_interval(100, 60)
    with mp.workdps(300):
        mid = (lo + hi) / 2
    assert lo < mid < hi
    crafted = BoundValue(
        formula=morton_silverman(1, 1),
        ln_lower=mid,
        ln_upper=mid,
        exact=None,
        exact_form="crafted",
        precision_digits=60,
    )
    assert compare(100, crafted) == INCONCLUSIVE
    assert compare(99, crafted) == SATISFIED
    assert compare(101, crafted) == VIOLATED


def test_decimal_str_is_directed():
    mp.dps = 40
    x = mp.log(mp.mpf(10**12 + 39))
    for digits in (8, 20):
        up = decimal_str(x, digits, upward=True)
        down = decimal_str(x, digits, upward=False)
        prec = 300
        assert mp.make_mpf(libmp.from_str(up, prec, "d")) >= x
        assert mp.make_mpf(libmp.from_str(down, prec, "u")) <= x


def test_decimal_str_keeps_requested_width():
    # the directed bump must not round the rendering down to the default
    # 28-digit decimal context
    for k in range(2, 20):
        lo, hi = ln_interval(k, 200)
        assert len(decimal_str(hi, 200, upward=True)) >= 150
        assert len(decimal_str(lo, 200, upward=False)) >= 150


def test_ln_interval_encloses():
    lo, hi = ln_interval(2, 60)
    mp.dps = 80
    ln2 = mp.log(2)
    assert lo <= ln2 <= hi
    assert hi - lo < mp.mpf(10) ** -55
    with pytest.raises(ValueError):
        ln_interval(0, 60)


def test_magnitude_strings():
    assert evaluate_bound(pgl2_order(1)).magnitude_str() == "6"
    m = evaluate_bound(canci_c(1)).magnitude_str()
    assert m.startswith("10^434294481903.") or m.startswith("10^434294481908.")


def test_formula_validation():
    with pytest.raises(ValueError):
        BoundFormula("NoSuch", (("s", 1),))
    with pytest.raises(ValueError):
        BoundFormula("CanciC", (("r", 1),))
    with pytest.raises(ValueError):
        canci_c(0)
    with pytest.raises(ValueError):
        morton_silverman(-1, 1)
    # t and r may be zero
    assert evaluate_bound(morton_silverman(0, 1)).ln_upper > 0
    assert evaluate_bound(beukers_schlickewei(0)).exact == 256


def test_precision_env_override(monkeypatch):
    monkeypatch.delenv(bounds.PRECISION_ENV, raising=False)
    assert working_precision() == 60
    monkeypatch.setenv(bounds.PRECISION_ENV, "80")
    assert working_precision() == 80
    v = evaluate_bound(canci_c(1))
    assert v.precision_digits == 80
    monkeypatch.setenv(bounds.PRECISION_ENV, "abc")
    with pytest.raises(ValueError):
        working_precision()
    monkeypatch.setenv(bounds.PRECISION_ENV, "5")
    with pytest.raises(ValueError):
        working_precision()


def test_bound_strings_round_trip_enclosure():
    v = evaluate_bound(canci_c(1))
    mp.dps = 100
    lo = mp.mpf(v.ln_lower_str)
    hi = mp.mpf(v.ln_upper_str)
    oracle = mp.mpf(ORACLES["c1"])
    assert lo <= oracle <= hi
