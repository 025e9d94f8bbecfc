"""Digit expansions: exact values, dual representations, and cylinders.

Run with:  python3 demos/expansions_demo.py
"""

from fractions import Fraction

from cantorshift import (
    BaseSpec,
    Cylinder,
    DigitExpansion,
    Tail,
    cylinder_interval,
    dual_representation,
    expansion_of,
    format_expansion,
    parse_expansion,
    value_of,
)

# A number in [0, 1] is a base spec, a digit prefix, and a symbolic tail.
# Constant base 10, digits 2 5, zeros afterwards: the familiar 0.25.
quarter = DigitExpansion(BaseSpec.constant(10), (2, 5))
print("value of", format_expansion(quarter), "=", value_of(quarter))

# The same number also ends in all-nines: 0.2499999...
other = dual_representation(quarter)
print("dual form:", format_expansion(other), "=", value_of(other))

# Bases can vary by position (eventually constant).  Over bases 2,3,4,5,5,...
# the digit word 1,2 spans the interval below.
base = BaseSpec.cantor((2, 3, 4), 5)
word = DigitExpansion(base, (1, 2))
print("\nover bases", base, "digits [1,2] give", value_of(word))

# Greedy digit extraction inverts value_of, with the tail preference picking
# which of the two forms of a terminating number comes back.
x = Fraction(1, 4)
print("\n1/4 in base 10, zeros preference: ", format_expansion(expansion_of(x, BaseSpec.constant(10), 4)))
print("1/4 in base 10, max-tail preference:", format_expansion(expansion_of(x, BaseSpec.constant(10), 4, Tail.MAX)))
print("1/3 in base 2 truncated at 8 digits:", format_expansion(expansion_of(Fraction(1, 3), BaseSpec.constant(2), 8)))

# A cylinder is the closed interval of numbers sharing a digit prefix.
print("\nrank-2 cylinders in base 3 tile [0, 1]:")
for d1 in range(3):
    for d2 in range(3):
        lo, hi = cylinder_interval(Cylinder(BaseSpec.constant(3), (d1, d2)))
        print(f"  [{d1}{d2}] -> [{lo}, {hi}]  (length {hi - lo})")

# The textual notation round-trips.
text = "Q(2,3,4|5):[1,2]:max"
print("\nparsed", text, "->", parse_expansion(text))
