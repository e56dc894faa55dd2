import pytest

from telescope.config import Settings, load_config, parse_config
from telescope.exceptions import DataError


def test_parse():
    s = parse_config("# thresholds\nmax_count = 2\npower_fraction=0.4\n"
                     "gradient_boosting.rounds = 50  # fewer\n")
    assert s.max_count == 2
    assert s.power_fraction == 0.4
    assert s.params_for("gradient_boosting")["rounds"] == 50
    assert s.params_for("cart") == Settings().params_for("cart")


@pytest.mark.parametrize("text, where", [
    ("max_count\n", ":1:"),
    ("\nfoo = 1\n", ":2:"),
    ("max_count = 1.5\n", ":1:"),
    ("cart.max_depth = x\n", ":1:"),
])
def test_errors_name_the_line(text, where):
    with pytest.raises(DataError, match=where):
        parse_config(text, "cfg.txt")


def test_missing_file(tmp_path):
    with pytest.raises(DataError, match="nope.cfg"):
        load_config(tmp_path / "nope.cfg")
