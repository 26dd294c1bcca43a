#!/usr/bin/env node
import yargs from 'yargs';
import { hideBin } from 'yargs/helpers';

import { exportCorpus, sidecarPath, writeExport } from './exporter.js';

yargs(hideBin(process.argv))
  .scriptName('readlab-export')
  .command(
    'export',
    'annotate a labeled text corpus into annotation JSON',
    (cmd) =>
      cmd
        .option('in', {
          type: 'string',
          demandOption: true,
          describe: 'directory of per-class subdirectories of .txt files, or a CSV with text,label',
        })
        .option('out', {
          type: 'string',
          demandOption: true,
          describe: 'output annotation JSON path',
        }),
    (argv) => {
      const result = exportCorpus(argv.in);
      writeExport(result, argv.out);
      const n = result.annotations.documents.length;
      if (n === 0) {
        console.warn('warning: no documents exported');
      }
      for (const skip of result.skipped) {
        console.warn(`warning: skipped ${skip.source}: ${skip.reason}`);
      }
      console.error(
        `exported ${n} documents (${result.skipped.length} skipped) to ${argv.out}; ` +
        `report: ${sidecarPath(argv.out)}`,
      );
    },
  )
  .demandCommand(1)
  .strict()
  .fail((msg, err) => {
    console.error(`error: ${msg ?? err?.message}`);
    process.exit(err && !msg ? 1 : 2);
  })
  .parse();
