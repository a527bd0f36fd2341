"""Group structure of rational points on simple abelian varieties over finite fields."""

__version__ = "0.1.0"
