import json
import os

from core.base_abstractions.bimodule import NEGATIVE, POSITIVE
from core.base_abstractions.misc import BraidParseError, InvalidConfigError
from main import EXIT_ERROR, EXIT_OK, RunConfig, get_args, main, parse_braid
from utils.cache_utils import cache_key


def _run_json(capsys, argv):
    status = main(argv + ["--output", "json"])
    return status, json.loads(capsys.readouterr().out)


class TestMain(object):
    def test_defaults(self, tmpdir):
        args = get_args([])
        assert args.mode == "skh"
        assert args.strands == 2
        assert args.log_level == "warning"

    def test_config(self, tmpdir):
        cfg = RunConfig.from_args(get_args(["--braid", "S2 s1", "--strands", "3"]))
        assert cfg.braids == ("S2 s1",)
        cfg.validate()
        failed = False
        try:
            cfg._replace(jobs=0).validate()
        except InvalidConfigError:
            failed = True
        assert failed

    def test_parse_braid(self, tmpdir):
        assert parse_braid("s1 s1", 2).letters == ((1, POSITIVE), (1, POSITIVE))
        assert parse_braid("S2 s1", 3).letters == ((2, NEGATIVE), (1, POSITIVE))
        failed = False
        try:
            parse_braid("s9", 2)
        except BraidParseError:
            failed = True
        assert failed

    def test_empty_word(self, tmpdir, capsys):
        status, out = _run_json(capsys, ["--cache-dir", str(tmpdir)])
        assert status == EXIT_OK
        assert out["schema"] == 1
        assert out["results"][0]["ranks"] == [[0, 0, 2]]
        assert out["results"][0]["winding"] == 0

    def test_pages(self, tmpdir, capsys):
        status, out = _run_json(
            capsys, ["--mode", "pages", "--braid", "s1", "--cache-dir", str(tmpdir)]
        )
        assert status == EXIT_OK
        result = out["results"][0]
        assert result["pages"][1]["ranks"] == [[0, 2, 1], [1, 4, 1], [2, 4, 1], [2, 6, 1]]
        assert result["stabilized_at"] == 3
        assert result["e_infinity_halved"] == [[0, "1"], [2, "3"]]
        assert result["violations"] == []

    def test_text_output(self, tmpdir, capsys):
        assert main(["--braid", "s1", "--braid", "S1", "--cache-dir", str(tmpdir)]) == EXIT_OK
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines == [
            "SKh('s1'; 0) on 2 strands: q^1 + t^1 q^3",
            "SKh('S1'; 0) on 2 strands: t^-1 q^-3 + q^-1",
        ]

    def test_bad_braid(self, tmpdir, capsys):
        assert main(["--braid", "s5", "--cache-dir", str(tmpdir)]) == EXIT_ERROR
        assert capsys.readouterr().out == ""

    def test_cache(self, tmpdir, capsys):
        argv = ["--braid", "s1 s1", "--cache-dir", str(tmpdir)]
        first = _run_json(capsys, argv)
        path = os.path.join(str(tmpdir), cache_key("skh", 2, "s1 s1") + ".pkl")
        assert os.path.exists(path)
        assert _run_json(capsys, argv) == first

        with open(path, "wb") as f:
            f.write(b"not a pickle")
        assert _run_json(capsys, argv) == first
        with open(path, "rb") as f:
            assert f.read() != b"not a pickle"

    def test_decat(self, tmpdir, capsys):
        status, out = _run_json(capsys, ["--mode", "decat", "--braid", "s1"])
        assert status == EXIT_OK
        assert out["results"][0]["congruent"]

    def test_pi_formal(self, tmpdir, capsys):
        status, out = _run_json(capsys, ["--mode", "pi-formal", "--n", "1"])
        assert status == EXIT_OK
        assert out["n"] == 1
        assert len(out["steps"]) == 3
        assert out["steps"][-1] == {"boundary": [], "representative": []}

    def test_invalid_config_exits_with_error(self, tmpdir, capsys):
        assert main(["--mode", "pi-formal", "--n", "0"]) == EXIT_ERROR
        assert main(["--jobs", "0", "--cache-dir", str(tmpdir)]) == EXIT_ERROR
        assert capsys.readouterr().out == ""

    def test_page_cap_not_bypassed_by_cache(self, tmpdir, capsys):
        argv = ["--mode", "pages", "--braid", "s1", "--cache-dir", str(tmpdir)]
        status, _ = _run_json(capsys, argv)
        assert status == EXIT_OK
        assert main(argv + ["--max-pages", "1"]) == EXIT_ERROR
        assert cache_key("pages", 2, "s1", None) != cache_key("pages", 2, "s1", 1)
        assert cache_key("pages", 2, "s1", None) != cache_key(
            "pages", 2, "s1", None, "pages.max_pages = 4"
        )

    def test_dump(self, tmpdir, capsys):
        status, out = _run_json(
            capsys, ["--mode", "dump", "--braid", "s1", "--dump-level", "2"]
        )
        assert status == EXIT_OK
        assert [b[0] for b in out["algebra"]["basis"]] == ["0", "1", "i01", "x01"]
        bimodule = out["bimodules"][0]
        assert bimodule["name"] == "M(S1)"
        assert len(bimodule["basis"]) == 8
        assert len(bimodule["hochschild"]["generators"]) > 0
        assert len(bimodule["tate"]["generators"]) == 34
        assert len(bimodule["tate"]["tau"]) > 0

    def test_dump_algebra_only(self, tmpdir, capsys):
        status, out = _run_json(capsys, ["--mode", "dump", "--strands", "3"])
        assert status == EXIT_OK
        assert "bimodules" not in out
        assert ["x12", "i01", "x12i01"] in out["algebra"]["multiplication"]


if __name__ == "__main__":
    TestMain().test_defaults(None)  # type:ignore
