"""The compiled and pure kernels must agree bit for bit."""

from __future__ import annotations

import os
import random
import subprocess
import sys

import pytest

from unstable_ext import _pure

native = pytest.importorskip(
    "unstable_ext._kernels", reason="compiled kernels not built"
)


def test_backend_names():
    assert _pure.BACKEND_NAME == "pure"
    assert native.BACKEND_NAME == "native"


def test_binom2_parity():
    for a in range(-5, 70):
        for b in range(-5, 70):
            assert _pure.binom2(a, b) == native.binom2(a, b), (a, b)


def test_adem_straightening_parity_random():
    rng = random.Random(411)
    _pure.clear_caches()
    native.clear_caches()
    for _ in range(400):
        word = tuple(
            rng.randint(1, 20) for _ in range(rng.randint(1, 4))
        )
        assert _pure.adem_reduce_word(word) == native.adem_reduce_word(
            word
        ), word


def test_lambda_straightening_parity_random():
    rng = random.Random(412)
    for _ in range(400):
        word = tuple(
            rng.randint(0, 14) for _ in range(rng.randint(1, 5))
        )
        assert _pure.lambda_reduce_word(
            word
        ) == native.lambda_reduce_word(word), word


def test_rref_parity_random():
    rng = random.Random(413)
    for _ in range(300):
        nrows = rng.randint(0, 12)
        ncols = rng.randint(0, 12)
        rows = [rng.getrandbits(ncols) for _ in range(nrows)]
        got_p = _pure.rref_bits(list(rows), ncols)
        got_n = native.rref_bits(list(rows), ncols)
        assert got_p == got_n, (rows, ncols)
        if ncols:
            npc = rng.randint(0, ncols)
            assert _pure.rref_bits(list(rows), ncols, npc) == native.rref_bits(
                list(rows), ncols, npc
            ), (rows, ncols, npc)


def test_rref_parity_wide_matrices():
    # force several 64-bit limbs in the compiled path
    rng = random.Random(414)
    for _ in range(30):
        ncols = rng.randint(120, 260)
        rows = [rng.getrandbits(ncols) for _ in range(rng.randint(1, 40))]
        assert _pure.rref_bits(list(rows), ncols) == native.rref_bits(
            list(rows), ncols
        )


def _selected(env_value: str | None) -> subprocess.CompletedProcess:
    env = dict(os.environ)
    env.pop("UNSTABLE_EXT_BACKEND", None)
    if env_value is not None:
        env["UNSTABLE_EXT_BACKEND"] = env_value
    return subprocess.run(
        [
            sys.executable,
            "-c",
            "from unstable_ext._backend import BACKEND_NAME; "
            "print(BACKEND_NAME)",
        ],
        capture_output=True,
        text=True,
        env=env,
    )


def test_env_var_selects_backend():
    assert _selected("pure").stdout.strip() == "pure"
    assert _selected("native").stdout.strip() == "native"
    auto = _selected(None)
    assert auto.stdout.strip() in {"pure", "native"}
    bogus = _selected("turbo")
    assert bogus.returncode != 0
    assert "UNSTABLE_EXT_BACKEND" in bogus.stderr
