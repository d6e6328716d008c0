"""The ten acceptance criteria.  Each test prints one PASS/FAIL line.

Every criterion runs on the required family (size <= 6, free variables
from {x, y}).  Parts that have no instances there (pi peaks, pi
simulations, diverging terms) are also swept at a larger size so they are
not only vacuously true.
"""

from functools import lru_cache

from conftest import OMEGA
from ljc.harness import SuiteConfig, run_suite
from ljc.isn import Unknown
from ljc.synthesis import synthesize_quant
from ljc.syntax import parse_term

FAMILY = 6
DEEP = 8
DEEPER = 9


@lru_cache(maxsize=None)
def report(suite, size=FAMILY):
    return run_suite(SuiteConfig(suite, max_size=size))


def verdict(capsys, number, title, ok, detail):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}: {detail}")
    assert ok, detail


def brief(rep, size, *keys):
    extra = "".join(f", {k}={rep.stats.get(k, 0)}" for k in keys)
    return f"size<={size} checked {rep.checked}, violations {len(rep.violations)}, unknown {rep.unknown}{extra}"


def test_criterion_1_isn_correctness(capsys):
    rep = report("isn")
    deep = report("isn", DEEP)
    rate = rep.unknown / rep.checked
    ok = rep.ok and deep.ok and rep.wall_time < 600
    detail = f"{brief(rep, FAMILY)} (unknown rate {rate:.1%}, {rep.wall_time:.1f}s); {brief(deep, DEEP)}"
    verdict(capsys, 1, "inductive SN agrees with search", ok, detail)


def test_criterion_2_equivalences(capsys):
    rep, deep = report("equivalence"), report("equivalence", DEEP)
    verdict(capsys, 2, "SN(dbeta) = SN(beta,pi) = SN(beta,p2)", rep.ok and deep.ok, f"{brief(rep, FAMILY)}; {brief(deep, DEEP)}")


def test_criterion_3_faithfulness(capsys):
    rep, deep = report("faithfulness"), report("faithfulness", DEEP)
    naive = rep.stats.get("naive_counterexample") == 1
    ok = rep.ok and deep.ok and naive
    detail = f"{brief(rep, FAMILY, 'naive_counterexample')}; {brief(deep, DEEP, 'env_grown', 'type_grown')}"
    verdict(capsys, 3, "star encoding is faithful, naive one is not", ok, detail)


def test_criterion_4_characterization_and_bound(capsys):
    rep, deep = report("bound"), report("bound", DEEP)
    # no diverging term has size <= 8; check one directly
    omega = synthesize_quant(parse_term(OMEGA), fuel=5000)
    ok = rep.ok and deep.ok and isinstance(omega, Unknown)
    detail = f"{brief(rep, FAMILY, 'min_margin')}; {brief(deep, DEEP, 'min_margin')}; Omega not typed: {isinstance(omega, Unknown)}"
    verdict(capsys, 4, "SN terms type and size bounds reductions", ok, detail)


def test_criterion_5_worked_cases(capsys):
    rep = run_suite(SuiteConfig("worked-cases"))
    names = ", ".join(sorted(rep.stats))
    verdict(capsys, 5, "worked cases replay", rep.ok and rep.checked == 5, f"{rep.checked} cases ({names}), violations {len(rep.violations)}")


def test_criterion_6_determinism_and_classifiers(capsys):
    rep, deep = report("classifiers"), report("classifiers", DEEPER)
    ok = rep.ok and deep.ok and deep.stats.get("peaks", 0) > 0
    verdict(capsys, 6, "weak-head determinism and classifiers", ok, f"{brief(rep, FAMILY, 'peaks')}; {brief(deep, DEEPER, 'peaks')}")


def test_criterion_7_lemma_replay(capsys):
    rep, deep = report("lemmas"), report("lemmas", DEEP)
    keys = ("substitution", "subject_reduction", "erasing", "pi", "perml")
    ok = rep.ok and deep.ok and all(deep.stats.get(k, 0) > 0 for k in keys)
    verdict(capsys, 7, "quantitative lemmas replay", ok, f"{brief(rep, FAMILY, *keys)}; {brief(deep, DEEP, *keys)}")


def test_criterion_8_simulations(capsys):
    rep, deep = report("simulations"), report("simulations", DEEP)
    keys = ("star_sharp:p2", "bullet2:s", "jlam:dbeta")
    ok = rep.ok and deep.ok and all(rep.stats.get(k, 0) > 0 for k in keys)
    verdict(capsys, 8, "simulations", ok, f"{brief(rep, FAMILY, *keys)}; {brief(deep, DEEP, 'naive:pi', 'star:pi')}")


def test_criterion_9_maxred(capsys):
    rep, deep = report("maxred"), report("maxred", DEEPER)
    ok = rep.ok and deep.ok
    verdict(capsys, 9, "maxred oracles", ok, f"{brief(rep, FAMILY, 'max_maxred')}; {brief(deep, DEEPER, 'max_maxred')}")


def test_criterion_10_simple_types(capsys):
    rep, deep = report("simple"), report("simple", DEEP)
    ok = rep.ok and deep.ok and rep.stats.get("audited", 0) > 0
    verdict(capsys, 10, "simple types normalize, subformula property", ok, f"{brief(rep, FAMILY, 'typable', 'audited')}; {brief(deep, DEEP, 'typable', 'audited')}")
