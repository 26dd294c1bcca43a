/**
 * Shallow constituency builder over Universal POS runs.
 *
 * Without a full parser, sentences are bracketed from chunk heuristics:
 * nominal runs become NP, verbal runs VP, ADP plus a following NP nests as
 * PP, bare adjective/adverb runs become ADJP/ADVP, and a subordinating
 * conjunction opens an SBAR that captures constituents up to the next comma
 * or the sentence end. Every token surfaces as exactly one leaf, so the
 * tree's leaf count always matches the token count.
 */

import { TokenJson } from './schema.js';

const NOMINAL = new Set(['NOUN', 'PROPN', 'PRON']);
const NP_MEMBER = new Set(['DET', 'NUM', 'ADJ', 'NOUN', 'PROPN', 'PRON']);
const VP_MEMBER = new Set(['VERB', 'AUX', 'PART']);

export interface TreeNode {
  label: string;
  children: TreeNode[];
  leaf?: string;
}

export interface NpSpan {
  start: number;
  end: number; // exclusive
  headIndex: number | null; // last NOUN/PROPN in the span
}

export interface ChunkedSentence {
  root: TreeNode;
  nounPhrases: NpSpan[];
}

function escapeLeaf(text: string): string {
  return text.replace(/\(/g, '-LRB-').replace(/\)/g, '-RRB-');
}

function preterminal(token: TokenJson): TreeNode {
  return { label: token.upos, children: [{ label: '', children: [], leaf: token.text }] };
}

export function renderTree(node: TreeNode): string {
  if (node.leaf !== undefined) {
    return escapeLeaf(node.leaf);
  }
  const inner = node.children.map(renderTree).join(' ');
  return `(${node.label} ${inner})`;
}

export function chunkSentence(tokens: TokenJson[]): ChunkedSentence {
  const nounPhrases: NpSpan[] = [];

  function nounPhraseAt(i: number): { node: TreeNode; next: number } | null {
    let j = i;
    while (j < tokens.length && NP_MEMBER.has(tokens[j].upos)) j += 1;
    let end = j;
    while (end > i && !NOMINAL.has(tokens[end - 1].upos)) end -= 1;
    const hasNominal = tokens.slice(i, end).some((t) => NOMINAL.has(t.upos));
    if (!hasNominal) return null;
    let headIndex: number | null = null;
    for (let k = end - 1; k >= i; k -= 1) {
      if (tokens[k].upos === 'NOUN' || tokens[k].upos === 'PROPN') {
        headIndex = k;
        break;
      }
    }
    nounPhrases.push({ start: i, end, headIndex });
    const node: TreeNode = {
      label: 'NP',
      children: tokens.slice(i, end).map(preterminal),
    };
    return { node, next: end };
  }

  function constituentAt(i: number): { node: TreeNode; next: number } {
    const tag = tokens[i].upos;

    if (tag === 'SCONJ') {
      const children: TreeNode[] = [preterminal(tokens[i])];
      let j = i + 1;
      while (j < tokens.length && !(tokens[j].upos === 'PUNCT' && tokens[j].text === ',')) {
        const inner = constituentAt(j);
        children.push(inner.node);
        j = inner.next;
      }
      return { node: { label: 'SBAR', children }, next: j };
    }

    if (NP_MEMBER.has(tag)) {
      const np = nounPhraseAt(i);
      if (np) return np;
      // a run with no nominal: adjective run becomes ADJP, otherwise singles
      if (tag === 'ADJ') {
        let j = i;
        while (j < tokens.length && tokens[j].upos === 'ADJ') j += 1;
        return {
          node: { label: 'ADJP', children: tokens.slice(i, j).map(preterminal) },
          next: j,
        };
      }
      return { node: preterminal(tokens[i]), next: i + 1 };
    }

    if (VP_MEMBER.has(tag)) {
      let j = i;
      let sawVerb = false;
      while (j < tokens.length && VP_MEMBER.has(tokens[j].upos)) {
        if (tokens[j].upos === 'VERB' || tokens[j].upos === 'AUX') sawVerb = true;
        j += 1;
      }
      if (sawVerb) {
        return {
          node: { label: 'VP', children: tokens.slice(i, j).map(preterminal) },
          next: j,
        };
      }
      return { node: preterminal(tokens[i]), next: i + 1 };
    }

    if (tag === 'ADP') {
      if (i + 1 < tokens.length && NP_MEMBER.has(tokens[i + 1].upos)) {
        const np = nounPhraseAt(i + 1);
        if (np) {
          return {
            node: { label: 'PP', children: [preterminal(tokens[i]), np.node] },
            next: np.next,
          };
        }
      }
      return { node: preterminal(tokens[i]), next: i + 1 };
    }

    if (tag === 'ADV') {
      let j = i;
      while (j < tokens.length && tokens[j].upos === 'ADV') j += 1;
      return {
        node: { label: 'ADVP', children: tokens.slice(i, j).map(preterminal) },
        next: j,
      };
    }

    return { node: preterminal(tokens[i]), next: i + 1 };
  }

  const children: TreeNode[] = [];
  let i = 0;
  while (i < tokens.length) {
    const { node, next } = constituentAt(i);
    children.push(node);
    i = next;
  }
  return { root: { label: 'S', children }, nounPhrases };
}
