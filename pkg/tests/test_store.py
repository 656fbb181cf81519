"""Item store persistence: append-only log, replay, transitions, export."""

import json

import pytest

from conceptgen.controls import CefrLevel, RoleLabel
from conceptgen.corpus import read_pairs
from conceptgen.errors import StatusTransitionError
from conceptgen.pipeline.store import (
    Candidate,
    ItemStatus,
    ItemStore,
    ReviewRecord,
    export_accepted,
)


@pytest.fixture()
def store(tmp_path):
    s = ItemStore(tmp_path / "items.log")
    yield s
    s.close()


def two_candidates():
    return [
        Candidate(text="the dog chased the cat", metrics={"length": 5.0}),
        Candidate(text="the cat chased the dog", metrics={"length": 5.0}),
    ]


def test_add_item_assigns_sequential_ids(store):
    a = store.add_item(["dog", "cat"], two_candidates())
    b = store.add_item(["bird", "sing"], two_candidates())
    assert a.item_id == "item-000001"
    assert b.item_id == "item-000002"
    assert a.status is ItemStatus.PENDING


def test_review_appends_and_means(store):
    item = store.add_item(["dog", "cat"], two_candidates())
    store.add_review(
        item.item_id,
        ReviewRecord("r1", grammaticality=4, complexity=2, plausibility=4),
    )
    updated = store.add_review(
        item.item_id,
        ReviewRecord("r2", grammaticality=2, complexity=4, plausibility=2),
    )
    assert len(updated.reviews) == 2
    assert updated.mean_scores() == {
        "grammaticality": 3.0,
        "complexity": 3.0,
        "plausibility": 3.0,
    }


def test_review_score_range_enforced():
    with pytest.raises(ValueError):
        ReviewRecord("r1", grammaticality=5, complexity=2, plausibility=4)
    with pytest.raises(ValueError):
        ReviewRecord("r1", grammaticality=0, complexity=2, plausibility=4)


def test_review_candidate_index_range(store):
    item = store.add_item(["dog", "cat"], two_candidates())
    with pytest.raises(ValueError):
        store.add_review(
            item.item_id,
            ReviewRecord(
                "r1",
                grammaticality=3,
                complexity=3,
                plausibility=3,
                candidate_index=7,
            ),
        )


def test_status_transitions_pending_only(store):
    item = store.add_item(["dog", "cat"], two_candidates())
    store.set_status(item.item_id, ItemStatus.ACCEPTED)
    with pytest.raises(StatusTransitionError):
        store.set_status(item.item_id, ItemStatus.REJECTED)
    with pytest.raises(StatusTransitionError):
        store.set_status(item.item_id, ItemStatus.PENDING)
    other = store.add_item(["bird"], two_candidates())
    with pytest.raises(StatusTransitionError):
        store.set_status(other.item_id, ItemStatus.PENDING)


def test_replay_restores_state(tmp_path):
    path = tmp_path / "items.log"
    s1 = ItemStore(path)
    item = s1.add_item(["dog", "cat"], two_candidates(), cefr=CefrLevel.A1)
    s1.add_review(
        item.item_id,
        ReviewRecord("r1", grammaticality=4, complexity=2, plausibility=4),
    )
    s1.set_status(item.item_id, ItemStatus.ACCEPTED)
    s1.close()

    s2 = ItemStore(path)
    got = s2.get(item.item_id)
    assert got.status is ItemStatus.ACCEPTED
    assert got.cefr is CefrLevel.A1
    assert len(got.reviews) == 1
    assert got.reviews[0].reviewer_id == "r1"
    # id counter continues past replayed items
    assert s2.add_item(["bird"], two_candidates()).item_id == "item-000002"
    s2.close()


def test_partial_trailing_line_tolerated(tmp_path):
    path = tmp_path / "items.log"
    s1 = ItemStore(path)
    s1.add_item(["dog", "cat"], two_candidates())
    s1.close()

    with open(path, "a", encoding="utf-8") as fh:
        fh.write('{"event": "review", "itemId": "item-0')  # torn write
    s2 = ItemStore(path)
    assert len(s2.items()) == 1
    assert len(s2.get("item-000001").reviews) == 0
    s2.close()


def test_compaction_preserves_state_and_shrinks(tmp_path):
    path = tmp_path / "items.log"
    s = ItemStore(path)
    item = s.add_item(["dog", "cat"], two_candidates())
    for i in range(5):
        s.add_review(
            item.item_id,
            ReviewRecord(f"r{i}", grammaticality=3, complexity=3, plausibility=3),
        )
    s.set_status(item.item_id, ItemStatus.REJECTED)
    before_lines = path.read_text().count("\n")
    s.compact()
    after_lines = path.read_text().count("\n")
    assert after_lines == 1
    assert after_lines < before_lines
    got = s.get(item.item_id)
    assert got.status is ItemStatus.REJECTED
    assert len(got.reviews) == 5
    # still writable after compaction
    s.add_item(["bird"], two_candidates())
    s.close()
    again = ItemStore(path)
    assert len(again.items()) == 2
    again.close()


def test_items_filter_by_status(store):
    a = store.add_item(["dog"], two_candidates())
    b = store.add_item(["cat"], two_candidates())
    store.set_status(a.item_id, ItemStatus.ACCEPTED)
    assert [i.item_id for i in store.items(ItemStatus.ACCEPTED)] == [a.item_id]
    assert [i.item_id for i in store.items(ItemStatus.PENDING)] == [b.item_id]
    assert len(store.items()) == 2


def test_winning_candidate_highest_mean(store):
    item = store.add_item(["dog", "cat"], two_candidates())
    store.add_review(
        item.item_id,
        ReviewRecord("r1", grammaticality=2, complexity=2, plausibility=2, candidate_index=0),
    )
    updated = store.add_review(
        item.item_id,
        ReviewRecord("r2", grammaticality=4, complexity=4, plausibility=4, candidate_index=1),
    )
    assert updated.winning_candidate().text == "the cat chased the dog"


def test_winning_candidate_defaults_to_first(store):
    item = store.add_item(["dog", "cat"], two_candidates())
    assert item.winning_candidate().text == "the dog chased the cat"


def test_export_accepted(tmp_path, store, lexicon):
    item = store.add_item(["dog", "chase", "cat"], two_candidates())
    store.set_status(item.item_id, ItemStatus.ACCEPTED)
    rejected = store.add_item(["bird"], two_candidates())
    store.set_status(rejected.item_id, ItemStatus.REJECTED)
    out = tmp_path / "accepted.jsonl"
    count = export_accepted(store, out, lexicon)
    assert count == 1
    pairs = read_pairs(out, lexicon)
    assert len(pairs) == 1
    assert pairs[0].sentence.raw == "the dog chased the cat"
    assert pairs[0].concepts == frozenset({"dog", "chase", "cat"})
    assert pairs[0].source == "curation"


def test_event_log_is_json_lines(tmp_path):
    path = tmp_path / "items.log"
    s = ItemStore(path)
    s.add_item(["dog"], two_candidates())
    s.close()
    lines = path.read_text(encoding="utf-8").strip().split("\n")
    assert all(json.loads(line)["event"] for line in lines)
