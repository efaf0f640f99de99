"""What the term parser accepts and how it reports what it rejects."""
from baryalg import SourceError, parse, print_term

good = ["v1", "[1/3](v1, v2)", "[0.5] ( v1 , [0.2](v2,v3) )"]
for text in good:
    print(f"{text!r:32} -> {print_term(parse(text))}")

bad = ["[0.5](v1, v2", "[1.5](v1, v2)", "[0](v1, v2)", "[0.5](v1 v2)", "v1 v2", "[0.5.2](v1, v2)"]
for text in bad:
    try:
        parse(text)
    except SourceError as err:
        print(f"{text!r:32} -> {err.kind.value} at offset {err.position}")
