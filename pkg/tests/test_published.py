from o4tensor.published import (
    MATCH,
    MISMATCH,
    SIGN_DROPPED,
    SLOTS,
    piece_records,
    reproduction_report,
    slot_records,
)

LS = range(2, 11)


def _status(slot, l):
    return next(r.status for r in slot_records([l]) if r.slot_id == slot)


def test_twelve_slots_six_contribute():
    assert len(SLOTS) == 12
    assert [s.slot_id for s in SLOTS if s.contributes] == ["A1", "A5", "B1", "B2", "B5", "B6"]


def test_sign_slot_flagged_everywhere():
    assert all(_status("A5", l) == SIGN_DROPPED for l in LS)


def test_other_contributing_slots_match():
    for l in LS:
        for r in slot_records([l]):
            if r.contributes and r.slot_id != "A5":
                assert r.status == MATCH, (r.slot_id, l)


def test_noncontributing_slots():
    for l in LS:
        for slot in ("A2", "A3", "A4", "A6", "B3"):
            assert _status(slot, l) == MATCH
    # printed numerator for B4 only agrees at l = 2
    assert _status("B4", 2) == MATCH
    assert all(_status("B4", l) == MISMATCH for l in range(3, 11))


def test_relation_terms():
    for l in LS:
        recs = piece_records(l)
        assert [r.status for r in recs] == [SIGN_DROPPED, MATCH, MATCH]


def test_report_flags():
    flags = reproduction_report(LS)["flags"]
    assert "A5 <l,l-1;1,1|l,l>: sign-dropped" in flags
    assert "B4 <l,l-1;1,-1|l+1,l-2>: mismatch" in flags
    assert "term 0: sign-dropped" in flags
    assert len(flags) == 3
