"""End-to-end tests of the command line driver (via main(argv))."""

import pytest

from siegel2.cli import ENV_CACHE_DIR, main
from siegel2.igusa import CACHE_NAMES, cache_path, save_generator_set
from siegel2.qexp import Expansion


@pytest.fixture(scope="module")
def cli_cache(tmp_path_factory, genset):
    """A warm cache directory holding the session's trace-12 build."""
    cache = tmp_path_factory.mktemp("cli-cache")
    save_generator_set(genset, cache)
    return cache


def run(capsys, *argv):
    status = main([str(a) for a in argv])
    out = capsys.readouterr()
    return status, out.out, out.err


# ----- build ---------------------------------------------------------------


def test_build_writes_cache_and_is_idempotent(tmp_path, capsys):
    status, out, err = run(
        capsys, "build", "--trace-bound", 5, "--cache-dir", tmp_path
    )
    assert status == 0 and err == ""
    assert out.startswith("built (trace bound 5)")
    for name in CACHE_NAMES:
        assert cache_path(tmp_path, name, 5).is_file()
    status, out, err = run(
        capsys, "build", "--trace-bound", 5, "--cache-dir", tmp_path
    )
    assert status == 0
    assert out.startswith("cache up to date")


def test_build_rejects_tiny_bound(tmp_path, capsys):
    status, out, err = run(
        capsys, "build", "--trace-bound", 1, "--cache-dir", tmp_path
    )
    assert status == 2
    assert err.startswith("error:")


# ----- verify --------------------------------------------------------------


def test_verify_certifies(cli_cache, capsys):
    status, out, err = run(capsys, "verify", "--cache-dir", cli_cache)
    assert status == 0, err
    assert "verdict: Certified" in out
    assert "witness" not in out
    assert "X35 matches the reference coefficients" in out
    assert "bound-matrix: (4, 5, 3)" in out


def test_verify_insufficient_at_small_bound(tmp_path, capsys):
    status, out, err = run(
        capsys, "verify", "--trace-bound", 5, "--cache-dir", tmp_path
    )
    assert status == 2
    assert "verdict: Insufficient" in out


def test_verify_detects_tampered_cache(cli_cache, tmp_path, capsys, genset):
    # copy the warm cache, then corrupt one X35 coefficient on disk
    import shutil

    bad = tmp_path / "cache"
    shutil.copytree(cli_cache, bad)
    x35_file = cache_path(bad, "X35", 12)
    text = x35_file.read_text()
    assert "\n2 4 -1 -69 1\n" in text
    x35_file.write_text(text.replace("\n2 4 -1 -69 1\n", "\n2 4 -1 -68 1\n"))

    status, out, err = run(capsys, "verify", "--cache-dir", bad)
    assert status == 1
    assert "verdict: Refuted" in out
    assert "witness: (2, 4, -1)" in out
    assert "expected -69, got -68" in out


def test_verify_theta_identity_mod5(cli_cache, capsys):
    status, out, err = run(capsys, "verify", "--prime", 5, "--cache-dir", cli_cache)
    assert status == 0
    assert "theta(X6) = 4*X12 mod 5" in out
    assert "verdict: Certified" in out


# ----- coeff ---------------------------------------------------------------


def test_coeff_table_and_lines(cli_cache, capsys):
    status, out, err = run(
        capsys, "coeff", "X35", 2, 3, -1, "--cache-dir", cli_cache
    )
    assert status == 0
    assert out.strip() == "a((2,3,-1); X35) = 1"
    status, out, err = run(
        capsys, "coeff", "X35", 2, 4, -1, "--format", "lines", "--cache-dir", cli_cache
    )
    assert status == 0
    assert out.strip() == "-69"


def test_coeff_mod_p(cli_cache, capsys):
    status, out, err = run(
        capsys, "coeff", "X10*X12", 2, 2, -2, "--prime", 23,
        "--cache-dir", cli_cache,
    )
    assert status == 0
    assert "mod 23" in out


def test_coeff_rejects_bad_index(cli_cache, capsys):
    status, out, err = run(
        capsys, "coeff", "X4", 1, 1, 3, "--cache-dir", cli_cache
    )
    assert status == 2 and "positive semidefinite" in err
    status, out, err = run(
        capsys, "coeff", "X4", 9, 9, 0, "--trace-bound", 5, "--cache-dir", cli_cache
    )
    assert status == 2 and "trace bound" in err


def test_coeff_rejects_bad_expression(cli_cache, capsys):
    status, out, err = run(
        capsys, "coeff", "X4 + X6", 1, 1, 0, "--cache-dir", cli_cache
    )
    assert status == 2
    assert err.startswith("error:")


# ----- minmat / theta / sturm / dump ----------------------------------------


def test_minmat_formats(cli_cache, capsys):
    status, out, err = run(
        capsys, "minmat", "X35", "--prime", 23, "--cache-dir", cli_cache
    )
    assert status == 0
    assert "(2, 3, -1)" in out
    status, out, err = run(
        capsys, "minmat", "X35", "--prime", 23, "--format", "lines",
        "--cache-dir", cli_cache,
    )
    assert out.strip() == "2 3 -1"


def test_theta_output_parses(cli_cache, capsys):
    status, out, err = run(
        capsys, "theta", "X6", "--prime", 5, "--cache-dir", cli_cache
    )
    assert status == 0
    assert out.splitlines()[0] == "qexp - 12 mod 5"
    F = Expansion.from_text(out)
    assert F.modulus == 5 and F.weight is None


def test_sturm_refutes_x35_mod7(cli_cache, capsys):
    status, out, err = run(
        capsys, "sturm", "X35", "--prime", 7, "--cache-dir", cli_cache
    )
    assert status == 1
    assert "witness: (2, 3, -1)" in out


def test_sturm_certifies_scaled_zero(cli_cache, capsys):
    status, out, err = run(
        capsys, "sturm", "5*X12", "--prime", 5, "--cache-dir", cli_cache
    )
    assert status == 0
    assert "verdict: Certified" in out


def test_dump_round_trips(cli_cache, capsys):
    status, out, err = run(
        capsys, "dump", "X10*X12", "--prime", 23, "--trace-bound", 12,
        "--cache-dir", cli_cache,
    )
    assert status == 0
    F = Expansion.from_text(out)
    assert F.weight == 22 and F.modulus == 23
    assert F.coefficient((2, 2, -2)) != 0


# ----- configuration --------------------------------------------------------


def test_cache_dir_env_var(cli_cache, tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv(ENV_CACHE_DIR, str(cli_cache))
    status, out, err = run(capsys, "coeff", "X35", 2, 3, -1)
    assert status == 0
    assert out.strip() == "a((2,3,-1); X35) = 1"
    assert not (tmp_path / ".siegel2-cache").exists()


def test_flag_overrides_env_var(cli_cache, tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv(ENV_CACHE_DIR, str(tmp_path / "unused"))
    status, out, err = run(
        capsys, "coeff", "X4", 1, 0, 0, "--cache-dir", cli_cache
    )
    assert status == 0
    assert "240" in out
    assert not (tmp_path / "unused").exists()
