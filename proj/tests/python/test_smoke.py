import json

import pytest

import aitlab


def test_nat_codec():
    assert [aitlab.nat_encode(w) for w in ["", "0", "1", "00", "111"]] == [0, 1, 2, 3, 14]
    assert aitlab.nat_decode(14) == "111"


def test_machine_runs():
    r = aitlab.run_prefix("110111")
    assert r["status"] == "halted"
    assert r["output"] == "0"
    assert r["bits_read"] == 6
    assert aitlab.run_plain("100101")["output"] == ""
    assert aitlab.disassemble(aitlab.assemble("<[-O]H")) == "<[-O]H"


def test_small_domain():
    records = aitlab.enumerate_domain(0, steps=10, max_bits=3)
    assert [p for p, _, _ in records] == ["111"]


def test_slog():
    assert [aitlab.slog(v) for v in (1, 16, 65535, 65536)] == [0, 3, 3, 4]


def test_lab_roundtrip(tmp_path):
    cfg = json.dumps({"n": "2..2", "deep_n": 2, "max_steps": 256, "max_program_bits": 12,
                      "plain_max_steps": 256, "plain_max_bits": 12, "bb_cap": 12,
                      "slack": "0..4", "max_data_width": 1, "random_tables": 50})
    lab = aitlab.Lab(cfg, str(tmp_path / "cache"))
    with pytest.raises(aitlab.MissingDomain):
        lab.report(["kraft"])
    lab.enumerate()
    summary, text = lab.report(["kraft", "monotone"])
    assert summary["kraft"][0] == "PASS"
    assert summary["monotone"][0] == "PASS"
    assert lab.config_hash in text
    assert lab.k("00") is not None
    assert lab.bb(2, 3) == "1"


def test_bad_config():
    with pytest.raises(aitlab.ConfigError):
        aitlab.Lab('{"max_program_bits": 10}')
    assert "kraft" in aitlab.claim_ids()
