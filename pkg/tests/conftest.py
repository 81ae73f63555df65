import random

from hypothesis import strategies as st

from pref2d import PreferenceOrder, Profile


@st.composite
def profiles(draw, max_m: int = 6, max_n: int = 4, min_m: int = 1, min_n: int = 1):
    """Random strict profiles with pairwise distinct orders."""
    m = draw(st.integers(min_m, max_m))
    import math

    n = draw(st.integers(min_n, min(max_n, math.factorial(m))))
    rankings = draw(
        st.lists(
            st.permutations(list(range(m))).map(tuple),
            min_size=n,
            max_size=n,
            unique_by=lambda r: r,
        )
    )
    return Profile(m, tuple(PreferenceOrder(r) for r in rankings))


def random_profile(rng: random.Random, m: int, n: int) -> Profile:
    """Uniform strict profile for plain randomized loops."""
    seen: set[tuple[int, ...]] = set()
    rankings = []
    while len(rankings) < n:
        r = list(range(m))
        rng.shuffle(r)
        t = tuple(r)
        if t not in seen:
            seen.add(t)
            rankings.append(t)
    return Profile(m, tuple(PreferenceOrder(r) for r in rankings))
