"""Brute-force strict-majority alignment oracle.

``synsets`` is a plain mapping from synset id to a set of member words; the
accepted synonyms arrive as any iterable of strings.
"""


def align(word, accepted_synonyms, synsets):
    """(status, synset id or None, winning overlap, synonym count)."""
    accepted = set(accepted_synonyms)
    count = len(accepted)
    candidates = sorted(sid for sid, members in synsets.items() if word in members)
    if not candidates:
        return ("no-synset", None, 0, count)
    overlaps = {sid: len(accepted & (set(synsets[sid]) - {word})) for sid in candidates}
    best = max(overlaps.values())
    if 2 * best <= count:
        return ("no-majority", None, best, count)
    top = [sid for sid in candidates if overlaps[sid] == best]
    if len(top) == 1:
        return ("matched", top[0], best, count)
    return ("ambiguous", None, best, count)
