import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ljc.esterms import EAbs, EApp, ESub, EVar
from ljc.terms import Abs, GApp, Var

sys.setrecursionlimit(20000)

settings.register_profile(
    "default",
    max_examples=150,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# a small name pool so that shadowing and capture actually happen
NAMES = st.sampled_from(["x", "y", "z", "a", "b"])


def j_terms(max_leaves: int = 8):
    return st.recursive(
        NAMES.map(Var),
        lambda kids: st.one_of(
            st.builds(Abs, NAMES, kids),
            st.builds(GApp, kids, kids, NAMES, kids),
        ),
        max_leaves=max_leaves,
    )


def es_terms(max_leaves: int = 8, subs: bool = True):
    def grow(kids):
        options = [st.builds(EAbs, NAMES, kids), st.builds(EApp, kids, kids)]
        if subs:
            options.append(st.builds(ESub, kids, NAMES, kids))
        return st.one_of(*options)

    return st.recursive(NAMES.map(EVar), grow, max_leaves=max_leaves)


DELTA = r"\y.y(y, w.w)"
OMEGA = r"(\y.y(y, z.z))(\y.y(y, z.z), x.x)"
T0 = rf"({DELTA})({DELTA}, x.z)"
EX1 = r"x1(x2, y1.(\a.a)(\a.a, z.\a.a))(x3, y.(\a.a)(\a.a, b.b))"
STUCK = r"w(u, v.\y.y(y, z.z))(\y.y(y, z.z), x.x)"
