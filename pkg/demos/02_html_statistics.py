"""Parse messy HTML with the reduced tree builder and compute the 31 HTML
statistics."""

from viscom.dom import HTML_FEATURE_NAMES, html_features, parse_dom

messy = b"""
<html><body>
<h1>Weather notes
<p>First paragraph without closing tag
<p>Second paragraph <b>with bold</b>
<ul><li>one<li>two<li>three</ul>
<table><tr><td>a<td>b</table>
<img src="x.png"><a href="/more">more</a>
</body></html>
"""

dom = parse_dom(messy)
body = dom.find("body")
print("body children:", [c.tag for c in body.children])

vector = html_features(dom)
for name, value in zip(HTML_FEATURE_NAMES, vector):
    if value != 0:
        print(f"{name:32} {value:g}")
