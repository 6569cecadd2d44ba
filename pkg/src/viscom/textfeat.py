"""Main-text extraction and the 32 textual complexity features.

The prose filter stands in for part-of-speech tagging: a candidate
paragraph is kept when it has at least five tokens, ends in sentence
punctuation, and contains at least one word from a fixed function-word
list. The syllable counter is a frozen heuristic (vowel groups with
silent-e suppression plus a small exception table); readability grades are
defined against it.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .dom import DomNode

WORD_RE = re.compile(r"[A-Za-z0-9'’]+")
SENTENCE_SPLIT_RE = re.compile(r"(?<=[.!?])\s+")
VOWEL_GROUP_RE = re.compile(r"[aeiouy]+")

# Subtrees never contributing to the main text.
CHROME_TAGS = {"nav", "header", "footer", "aside", "form", "script", "style", "noscript"}

# Tags whose inline content forms one paragraph candidate.
BLOCK_TEXT_TAGS = {
    "p", "li", "dd", "dt", "blockquote", "pre", "td", "th", "caption",
    "figcaption", "h1", "h2", "h3", "h4", "h5", "h6", "div", "article",
    "section", "main", "body", "summary", "details",
}

FUNCTION_WORDS = frozenset(
    """
    the a an is are was were be been being has have had do does did will
    would can could should shall may might must of in on at to for with by
    from as that this these those it its and but or if because while when
    there which who whom whose
    """.split()
)

SYLLABLE_EXCEPTIONS = {
    "area": 3, "being": 2, "beings": 2, "create": 2, "created": 3,
    "idea": 3, "ideas": 3, "quiet": 2, "science": 2, "really": 3,
    "people": 2, "business": 2, "every": 2, "different": 3, "evening": 2,
    "interesting": 3, "usually": 4,
}

TO_BE_WORDS = frozenset("be being been am is are was were".split())
AUXILIARY_WORDS = frozenset(
    "will shall cannot may need would should could might must ought can do does did has have had".split()
)
CONJUNCTION_WORDS = frozenset("and but or yet nor for so".split())
PRONOUN_WORDS = frozenset(
    """i me we us you he him she her it they them myself yourself himself
    herself itself ourselves themselves mine my your yours his hers its our
    ours their theirs this that these those""".split()
)
PREPOSITION_WORDS = frozenset(
    """about above across after against along among around at before behind
    below beneath beside between beyond by down during except for from in
    inside into near of off on onto outside over through to toward towards
    under until up upon with within without""".split()
)
INTERROGATIVE_WORDS = frozenset("why who what whom when where how which".split())
SUBORDINATION_WORDS = frozenset(
    """after although as because before if lest once provided since than
    though till unless until when whenever where whereas wherever while""".split()
)
ARTICLE_WORDS = frozenset("the a an".split())
NOMINALIZATION_SUFFIXES = ("tion", "ment", "ence", "ance")

TEXCOM_FEATURE_NAMES = (
    # readability grades
    "flesch_reading_ease",
    "flesch_kincaid_grade",
    "automated_readability_index",
    "coleman_liau_index",
    "gunning_fog",
    "lix",
    "smog",
    # sentence information
    "characters",
    "syllables",
    "words",
    "sentences",
    "paragraphs",
    "avg_word_length",
    "avg_sentence_length_words",
    "avg_sentence_length_chars",
    "long_words",
    "complex_words",
    "type_token_ratio",
    "min_sentence_length",
    "max_sentence_length",
    # word usage
    "tobe_verbs",
    "auxiliary_verbs",
    "conjunctions",
    "pronouns",
    "prepositions",
    "nominalizations",
    # sentence beginnings
    "begin_pronoun",
    "begin_interrogative",
    "begin_article",
    "begin_subordination",
    "begin_conjunction",
    "begin_preposition",
)

assert len(TEXCOM_FEATURE_NAMES) == 32


@dataclass(frozen=True)
class MainText:
    paragraphs: tuple[str, ...]

    def __bool__(self) -> bool:
        return bool(self.paragraphs)


def tokenize(text: str) -> list[str]:
    return [w.strip("'’") for w in WORD_RE.findall(text) if w.strip("'’")]


def count_syllables(word: str) -> int:
    w = re.sub(r"[^a-z]", "", word.lower())
    if not w:
        return 0
    if w in SYLLABLE_EXCEPTIONS:
        return SYLLABLE_EXCEPTIONS[w]
    groups = len(VOWEL_GROUP_RE.findall(w))
    if groups > 1 and w.endswith("e") and not w.endswith(("le", "ee", "ye", "ie", "oe")):
        groups -= 1
    return max(1, groups)


def split_sentences(paragraph: str) -> list[str]:
    return [s for s in (p.strip() for p in SENTENCE_SPLIT_RE.split(paragraph)) if s]


def is_prose(paragraph: str) -> bool:
    """The shipped prose filter: length, terminal punctuation, function word."""
    tokens = tokenize(paragraph)
    if len(tokens) < 5:
        return False
    stripped = paragraph.rstrip().rstrip("\"'’”)]")
    if not stripped or stripped[-1] not in ".!?":
        return False
    return any(t.lower() in FUNCTION_WORDS for t in tokens)


def _inline_text(node: DomNode) -> str:
    parts = []
    for sub in node.iter_subtree():
        if sub.is_text() and sub.text:
            parts.append(sub.text)
    return " ".join(parts)


def extract_main_text(dom: DomNode, geometry=None) -> MainText:
    """Collect prose paragraphs from content blocks of a parsed page.

    Navigation, header, footer, aside and form subtrees are skipped. The
    geometry argument is accepted for interface stability; visibility-based
    filtering is not applied because parsed DOM nodes carry no render ids.
    """
    del geometry
    body = dom.find("body") or dom
    paragraphs: list[str] = []

    def visit(node: DomNode):
        if node.tag in CHROME_TAGS:
            return
        element_children = [c for c in node.children if not c.is_text()]
        has_block_child = any(c.tag in BLOCK_TEXT_TAGS for c in element_children)
        if node.tag in BLOCK_TEXT_TAGS and not has_block_child:
            text = _inline_text(node)
            if text and is_prose(text):
                paragraphs.append(text)
            return
        for child in element_children:
            visit(child)

    visit(body)
    return MainText(paragraphs=tuple(paragraphs))


def textcom_features(t: MainText) -> np.ndarray:
    """The 32 textual complexity features; an empty text scores all zeros."""
    if not t.paragraphs:
        return np.zeros(len(TEXCOM_FEATURE_NAMES), dtype=float)

    sentences: list[str] = []
    for para in t.paragraphs:
        sentences.extend(split_sentences(para))
    sentence_tokens = [tokenize(s) for s in sentences]
    words = [w for toks in sentence_tokens for w in toks]

    n_words = len(words)
    n_sentences = len(sentences)
    if n_words == 0 or n_sentences == 0:
        return np.zeros(len(TEXCOM_FEATURE_NAMES), dtype=float)

    def alnum_len(word: str) -> int:
        return sum(1 for ch in word if ch.isalnum())

    n_chars = sum(alnum_len(w) for w in words)
    n_syllables = sum(count_syllables(w) for w in words)
    long_words = sum(1 for w in words if alnum_len(w) >= 7)
    complex_words = sum(1 for w in words if count_syllables(w) >= 3)
    sent_lengths = [len(toks) for toks in sentence_tokens]

    wps = n_words / n_sentences
    spw = n_syllables / n_words
    cpw = n_chars / n_words

    flesch = 206.835 - 1.015 * wps - 84.6 * spw
    fk_grade = 0.39 * wps + 11.8 * spw - 15.59
    ari = 4.71 * cpw + 0.5 * wps - 21.43
    coleman = 0.0588 * (100.0 * cpw) - 0.296 * (100.0 * n_sentences / n_words) - 15.8
    fog = 0.4 * (wps + 100.0 * complex_words / n_words)
    lix = wps + 100.0 * long_words / n_words
    smog = 1.0430 * math.sqrt(complex_words * 30.0 / n_sentences) + 3.1291

    lowered = [w.lower() for w in words]

    def usage(vocab: frozenset[str]) -> int:
        return sum(1 for w in lowered if w in vocab)

    nominalizations = sum(
        1 for w in lowered if len(w) > 7 and w.endswith(NOMINALIZATION_SUFFIXES)
    )

    def beginnings(vocab: frozenset[str]) -> int:
        return sum(1 for toks in sentence_tokens if toks and toks[0].lower() in vocab)

    values = [
        flesch,
        fk_grade,
        ari,
        coleman,
        fog,
        lix,
        smog,
        float(n_chars),
        float(n_syllables),
        float(n_words),
        float(n_sentences),
        float(len(t.paragraphs)),
        n_chars / n_words,
        wps,
        n_chars / n_sentences,
        float(long_words),
        float(complex_words),
        len(set(lowered)) / n_words,
        float(min(sent_lengths)),
        float(max(sent_lengths)),
        float(usage(TO_BE_WORDS)),
        float(usage(AUXILIARY_WORDS)),
        float(usage(CONJUNCTION_WORDS)),
        float(usage(PRONOUN_WORDS)),
        float(usage(PREPOSITION_WORDS)),
        float(nominalizations),
        float(beginnings(PRONOUN_WORDS)),
        float(beginnings(INTERROGATIVE_WORDS)),
        float(beginnings(ARTICLE_WORDS)),
        float(beginnings(SUBORDINATION_WORDS)),
        float(beginnings(CONJUNCTION_WORDS)),
        float(beginnings(PREPOSITION_WORDS)),
    ]
    out = np.asarray(values, dtype=float)
    assert out.shape == (len(TEXCOM_FEATURE_NAMES),)
    return out
