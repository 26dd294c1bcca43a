import { describe, expect, it } from 'vitest';

import { chunkSentence, renderTree, TreeNode } from '../src/chunker.js';
import { TokenJson } from '../src/schema.js';

function tok(text: string, upos: string): TokenJson {
  return { text, lemma: text.toLowerCase(), upos, is_stop: false };
}

function leaves(node: TreeNode): string[] {
  if (node.leaf !== undefined) return [node.leaf];
  return node.children.flatMap(leaves);
}

describe('chunkSentence', () => {
  it('wraps nominal runs in NP', () => {
    const tokens = [tok('The', 'DET'), tok('big', 'ADJ'), tok('dog', 'NOUN')];
    const { root, nounPhrases } = chunkSentence(tokens);
    expect(renderTree(root)).toBe('(S (NP (DET The) (ADJ big) (NOUN dog)))');
    expect(nounPhrases).toEqual([{ start: 0, end: 3, headIndex: 2 }]);
  });

  it('keeps every token as exactly one leaf', () => {
    const samples: TokenJson[][] = [
      [tok('The', 'DET'), tok('dog', 'NOUN'), tok('runs', 'VERB'), tok('.', 'PUNCT')],
      [tok('Because', 'SCONJ'), tok('it', 'PRON'), tok('ran', 'VERB'), tok(',', 'PUNCT'),
       tok('we', 'PRON'), tok('hid', 'VERB'), tok('.', 'PUNCT')],
      [tok('Quickly', 'ADV'), tok('!', 'PUNCT')],
      [tok('in', 'ADP'), tok('the', 'DET'), tok('house', 'NOUN')],
      [tok('red', 'ADJ'), tok('and', 'CCONJ'), tok('blue', 'ADJ')],
    ];
    for (const tokens of samples) {
      const { root } = chunkSentence(tokens);
      expect(leaves(root)).toEqual(tokens.map((t) => t.text));
    }
  });

  it('nests a following noun phrase under PP', () => {
    const tokens = [tok('in', 'ADP'), tok('the', 'DET'), tok('house', 'NOUN')];
    const { root } = chunkSentence(tokens);
    expect(renderTree(root)).toBe('(S (PP (ADP in) (NP (DET the) (NOUN house))))');
  });

  it('captures SBAR constituents up to a comma', () => {
    const tokens = [
      tok('Because', 'SCONJ'), tok('dogs', 'NOUN'), tok('ran', 'VERB'),
      tok(',', 'PUNCT'), tok('cats', 'NOUN'), tok('hid', 'VERB'),
    ];
    const { root } = chunkSentence(tokens);
    expect(renderTree(root)).toBe(
      '(S (SBAR (SCONJ Because) (NP (NOUN dogs)) (VP (VERB ran))) (PUNCT ,) (NP (NOUN cats)) (VP (VERB hid)))',
    );
  });

  it('escapes parentheses in leaves', () => {
    const tokens = [tok('(', 'PUNCT'), tok('dog', 'NOUN'), tok(')', 'PUNCT')];
    const { root } = chunkSentence(tokens);
    expect(renderTree(root)).toBe('(S (PUNCT -LRB-) (NP (NOUN dog)) (PUNCT -RRB-))');
  });

  it('groups verbal runs with auxiliaries into one VP', () => {
    const tokens = [
      tok('dogs', 'NOUN'), tok('have', 'AUX'), tok('been', 'AUX'), tok('running', 'VERB'),
    ];
    const { root } = chunkSentence(tokens);
    expect(renderTree(root)).toBe(
      '(S (NP (NOUN dogs)) (VP (AUX have) (AUX been) (VERB running)))',
    );
  });

  it('pronoun-only phrases have no head index', () => {
    const { nounPhrases } = chunkSentence([tok('It', 'PRON'), tok('ran', 'VERB')]);
    expect(nounPhrases).toEqual([{ start: 0, end: 1, headIndex: null }]);
  });
});
