"""Brute-force synonym-verdict oracle.

Independent of the library: a lexicon here is a plain mapping from lemma to a
list of (sense_id, domain_code, class_code) rows in file order.  Homograph
rows may repeat a sense id; the first row wins, as in the library's lookup.
"""

import unicodedata


def _canon(code: str) -> str:
    return unicodedata.normalize("NFC", code).casefold()


def synonym_verdict(lexicon, target_lemma, target_sense, proposal):
    """(verdict, matching sense ids of the proposal's own entry)."""
    rows = [row for row in lexicon[target_lemma] if row[0] == target_sense]
    if not rows:
        raise KeyError((target_lemma, target_sense))
    wanted = (_canon(rows[0][1]), _canon(rows[0][2]))
    if " " in proposal or proposal not in lexicon:
        return "accepted-multiword", ()
    matches = []
    for sense_id, domain, class_code in lexicon[proposal]:
        if (_canon(domain), _canon(class_code)) == wanted and sense_id not in matches:
            matches.append(sense_id)
    if matches:
        return "accepted", tuple(matches)
    return "rejected", ()
