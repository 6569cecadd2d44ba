"""Main-text extraction, textual complexity, and fact relevance."""

from viscom.dom import parse_dom
from viscom.relevance import DEFAULT_FACTS, FactSet, relevance_features
from viscom.textfeat import TEXCOM_FEATURE_NAMES, extract_main_text, textcom_features

page = b"""
<html><body>
<nav><a href="/">Home</a><a href="/weather">Weather</a></nav>
<article>
<h2>How storms build</h2>
<p>Warm humid air rises quickly and cools as it climbs into the sky.</p>
<p>Inside the cloud, ice particles collide and separate electric charge.</p>
<p>Read more</p>
</article>
<footer><p>Copyright notice text lives here and is ignored.</p></footer>
</body></html>
"""

text = extract_main_text(parse_dom(page))
print("extracted paragraphs:")
for p in text.paragraphs:
    print(" -", p)

vector = textcom_features(text)
print("\nselected text statistics:")
for name in ("flesch_reading_ease", "words", "sentences", "avg_sentence_length_words",
             "complex_words", "type_token_ratio"):
    print(f"  {name:28} {vector[TEXCOM_FEATURE_NAMES.index(name)]:.3f}")

facts = FactSet(facts=DEFAULT_FACTS)
relevance = relevance_features(text, facts)
print("\nper-fact max cosine similarity (hashed bag-of-words provider):")
for fact, score in zip(facts.facts, relevance):
    print(f"  {score:.3f}  {fact[:64]}...")
