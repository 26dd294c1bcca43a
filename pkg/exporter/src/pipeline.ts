/**
 * Thin wrapper around the wink-nlp English pipeline: sentence boundaries,
 * tokens, Universal POS tags, lemmas, and stopword flags.
 */

import winkNLP, { ItemSentence, ItemToken } from 'wink-nlp';
import model from 'wink-eng-lite-web-model';

import { repairVerblessSentence } from './repairs.js';
import { UPOS_TAGS, TokenJson } from './schema.js';

const nlp = winkNLP(model, ['sbd', 'pos']);
const its = nlp.its;

export interface AnalyzedSentence {
  tokens: TokenJson[];
}

/** Sentence-split, tokenize, tag, and lemmatize one document. */
export function analyze(text: string): AnalyzedSentence[] {
  const doc = nlp.readDoc(text);
  const sentences: AnalyzedSentence[] = [];
  doc.sentences().each((sentence: ItemSentence) => {
    const tokens: TokenJson[] = [];
    sentence.tokens().each((token: ItemToken) => {
      const raw = token.out(its.value);
      if (!raw || !raw.trim()) return;
      const pos = token.out(its.pos);
      // its.lemma's typing demands model addons that out() does not thread through
      const lemma = (token.out(its.lemma as never) as unknown as string) || raw.toLowerCase();
      tokens.push({
        text: raw,
        lemma,
        upos: UPOS_TAGS.has(pos) ? pos : 'X',
        is_stop: Boolean(token.out(its.stopWordFlag)),
      });
    });
    if (tokens.length > 0) {
      sentences.push({ tokens: repairVerblessSentence(tokens) });
    }
  });
  return sentences;
}
