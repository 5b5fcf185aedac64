"""
Unit tests for the named graph corpus
"""
import os
import unittest
from math import comb

import networkx as nx

from src import corpus
from src.oracle import colosseum_size
from src.stats import stats_row

SLOW = bool(os.environ.get('PITWIDTH_SLOW'))


class TestManifest(unittest.TestCase):
    """Test the manifest against the constructors."""

    def setUp(self):
        self.entries = corpus.load_manifest()

    def test_every_entry_has_a_constructor(self):
        self.assertEqual(len(self.entries), 24)
        self.assertEqual(set(corpus.names()), set(corpus.CONSTRUCTORS))

    def test_sizes_match(self):
        for item in self.entries:
            g = corpus.build(item.slug)
            self.assertEqual((g.n, g.m), (item.n, item.m), item.slug)

    def test_bundled_files_match_constructors(self):
        """Test each shipped .col file is the constructed graph up to relabelling."""
        self.assertTrue(all(item.bundled == f"graphs/{item.slug}.col" for item in self.entries))
        for item in self.entries:
            shipped = corpus.load(item.slug).to_networkx()
            built = corpus.build(item.slug).to_networkx()
            self.assertTrue(nx.is_isomorphic(shipped, built), item.slug)

    def test_lookup_by_name(self):
        self.assertEqual(corpus.entry('Goldner Harary').slug, 'goldner_harary')
        self.assertEqual(corpus.entry('Goldner-Harary').slug, 'goldner_harary')
        self.assertEqual(corpus.entry('grotzsch').treewidth, 5)
        with self.assertRaises(KeyError):
            corpus.entry('not a graph')

    def test_provenance(self):
        self.assertTrue(corpus.entry('heawood').verified)
        self.assertTrue(corpus.entry('hoffman').verified)
        self.assertEqual([item.slug for item in self.entries if not item.verified], ['mcgee'])


class TestKnownSizes(unittest.TestCase):
    """Test recorded sizes are reproduced."""

    def assertRow(self, slug):
        item = corpus.entry(slug)
        row = stats_row(item.name, corpus.load(slug))
        self.assertEqual((row.k, row.pit, row.arena, row.colosseum),
                         (item.k, item.pit, item.arena, item.colosseum), slug)

    def test_grotzsch(self):
        self.assertRow('grotzsch')

    def test_goldner_harary(self):
        self.assertRow('goldner_harary')

    def test_sierpinski_gasket(self):
        self.assertRow('sierpinski_gasket')

    def test_heawood(self):
        self.assertRow('heawood')

    def test_markstroem(self):
        self.assertRow('markstroem')

    def test_friendship_colosseum(self):
        """Test the count splits by whether the centre is contaminated.

        With the centre in C, N(C) is everything outside C: at most 3 of the
        20 blades stay out. Without it, at most 2 triangles are half in C.
        """
        item = corpus.entry('friendship_10')
        with_centre = sum(comb(20, j) for j in range(4))
        without_centre = sum(comb(10, h) for h in range(3)) * 2 ** 10 - 1
        self.assertEqual(colosseum_size(corpus.build(item.slug), item.k), with_centre + without_centre)
        # recorded table also counts the empty configuration
        self.assertEqual(item.colosseum, with_centre + without_centre + 1)

    @unittest.skipUnless(SLOW, 'set PITWIDTH_SLOW=1 to run')
    def test_reproduced_rows(self):
        for item in corpus.load_manifest():
            if item.verified:
                self.assertRow(item.slug)


if __name__ == '__main__':
    unittest.main()
