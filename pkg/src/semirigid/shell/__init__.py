"""Example generators, document IO and the command line."""
