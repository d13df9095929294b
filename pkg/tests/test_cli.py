import json

import pytest

from finalg import docio
from finalg.cli import main

from .conftest import make_bool4, make_chain


@pytest.fixture
def chain3_file(tmp_path):
    A = make_chain(3, ["0", "a", "1"],
                   arrow=[[2, 1, 2], [0, 2, 2], [0, 0, 2]])
    path = tmp_path / "chain3.json"
    path.write_text(docio.serialize_algebra(A))
    return str(path)


@pytest.fixture
def bool4_file(tmp_path):
    path = tmp_path / "bool4.json"
    path.write_text(docio.serialize_algebra(make_bool4()))
    return str(path)


def test_validate_ok(chain3_file, capsys):
    assert main(["validate", chain3_file]) == 0
    assert capsys.readouterr().out.strip() == "ok"


def test_validate_bad_order(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"size": 2, "leq": [[1, 1], [1, 1]]}')
    assert main(["validate", str(path)]) == 1
    assert "antisymmetry" in capsys.readouterr().out


def test_validate_inconsistent_table(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"size": 2, "leq": [[1, 1], [0, 1]], '
                    '"ops": {"meet": [[0, 1], [1, 1]]}}')
    assert main(["validate", str(path)]) == 1
    assert "(0,1)" in capsys.readouterr().out


def test_parse_error_is_usage_error(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"size": ')
    assert main(["validate", str(path)]) == 2
    assert main(["classify", str(path)]) == 2


def test_missing_file(capsys):
    assert main(["classify", "/nonexistent/file.json"]) == 2


def test_classify_output(chain3_file, capsys):
    assert main(["classify", chain3_file]) == 0
    lines = capsys.readouterr().out.split()
    assert "hBDL" in lines and "Hil0" not in lines


def test_kalman_and_center_round_trip(bool4_file, tmp_path, capsys):
    out = tmp_path / "pairs.json"
    assert main(["kalman", bool4_file, "--as", "bdl",
                 "--output", str(out)]) == 0
    pair_doc = docio.parse_algebra_file(str(out))
    assert pair_doc.size == 9
    back = tmp_path / "center.json"
    assert main(["center", str(out), "--output", str(back)]) == 0
    assert docio.parse_algebra_file(str(back)).size == 4


def test_ck_exit_codes(bool4_file, tmp_path, capsys):
    out = tmp_path / "pairs.json"
    main(["kalman", bool4_file, "--as", "bdl", "--output", str(out)])
    assert main(["ck", str(out)]) == 0
    # hunt a failing structure, then feed it back in
    witness = tmp_path / "witness.json"
    code = main(["search", "--class", "CenteredKleene", "--max-size", "7",
                 "--predicate", "ck", "--output", str(witness)])
    assert code == 1
    assert main(["ck", str(witness)]) == 1
    assert "ck fails" in capsys.readouterr().out


def test_roundtrip_command(tmp_path, capsys):
    path = tmp_path / "ha.json"
    path.write_text(docio.serialize_algebra(
        make_chain(2, arrow=[[1, 1], [0, 1]])))
    assert main(["roundtrip", str(path), "--as", "ha"]) == 0
    out = capsys.readouterr().out
    assert "alpha_isomorphism: yes" in out
    assert "beta_isomorphism: yes" in out


def test_congruences_and_filters(chain3_file, capsys):
    assert main(["congruences", chain3_file]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 2
    assert main(["filters", chain3_file]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 3
    assert main(["filters", chain3_file, "--congruent"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 2


def test_wb_congruences_and_quotient(tmp_path, capsys):
    ha = tmp_path / "ha.json"
    ha.write_text(docio.serialize_algebra(
        make_chain(2, arrow=[[1, 1], [0, 1]])))
    pairs = tmp_path / "pairs.json"
    main(["kalman", str(ha), "--as", "his", "--output", str(pairs)])
    assert main(["wb-congruences", str(pairs)]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 2
    assert main(["quotient", str(pairs), "--theta", "0,1,2"]) == 0
    quotient_doc = capsys.readouterr().out
    assert json.loads(quotient_doc)["size"] == 1
    assert main(["quotient", str(pairs), "--theta", "0,1|2"]) == 2


def test_search_all_satisfy(capsys):
    code = main(["search", "--class", "BDL", "--max-size", "4",
                 "--predicate", "kalman-ck"])
    assert code == 0
    assert "AllSatisfy" in capsys.readouterr().out


def test_search_witness_printed(capsys):
    code = main(["search", "--class", "CenteredKleene", "--max-size", "7",
                 "--predicate", "ck", "--witness"])
    assert code == 1
    out = capsys.readouterr().out
    assert "CounterexampleFound" in out
    assert '"size": 7' in out


def test_search_unknown_predicate(capsys):
    assert main(["search", "--class", "BDL", "--max-size", "3",
                 "--predicate", "bogus"]) == 2
