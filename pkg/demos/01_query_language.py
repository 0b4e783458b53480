"""
Boolean queries: parsing, matching, printing
============================================

The query language mirrors the quoted-phrase search boxes of the data
sources: phrases in double quotes, OR looser than AND, parentheses for
grouping, keywords case-insensitive.
"""

from infodelta import And, Or, Phrase, matches, parse_query, print_query, to_gdelt

# A disjunction of three phrases, written the way an analyst would type it.
query = parse_query('"casa green" OR "case green" OR "EPBD"')
print("tree:   ", query)
print("printed:", print_query(query))

# Matching is contiguous-token based, so "casa green" does not fire on
# "la casa era green" and accents or punctuation around tokens are ignored.
for text in (
    "Nuove CASE GREEN in arrivo dal 2025",
    "La direttiva EPBD è stata approvata.",
    "la casa era green, dicono",
    "mercato immobiliare in crescita",
):
    print(f"{matches(query, text)!s:>5}  {text}")

# AND binds tighter than OR; parentheses override.
precedence = parse_query('auto AND elettrica OR ztl')
grouped = parse_query('auto AND (elettrica OR ztl)')
print()
print("a AND b OR c  ->", print_query(precedence))
print("a AND (b OR c)->", print_query(grouped))

# Trees can also be built directly and re-serialized losslessly.
built = Or((Phrase("pompa di calore"), And((Phrase("caldaia"), Phrase("incentivi")))))
assert parse_query(print_query(built)) == built
print()
print("round-trip ok:", print_query(built))

# The same tree renders to the news API's query syntax, where AND is
# juxtaposition and OR groups get parentheses.
print("news syntax:  ", to_gdelt(built))
