// Emits the compact JSON AST of one Solidity file using solc-js.
// Usage: node solcjs_ast.js <file.sol> [source-name]
// The solc module is resolved from $SOLCJS (a path) or from node's search path.
const fs = require('fs');
const solc = require(process.env.SOLCJS || 'solc');

const file = process.argv[2];
const name = process.argv[3] || require('path').basename(file);
const input = {
  language: 'Solidity',
  sources: { [name]: { content: fs.readFileSync(file, 'utf8') } },
  settings: { outputSelection: { '*': { '': ['ast'] } } },
};
const out = JSON.parse(solc.compile(JSON.stringify(input)));
for (const e of out.errors || []) {
  if (e.severity === 'error') {
    console.error(e.formattedMessage);
    process.exit(1);
  }
}
process.stdout.write(JSON.stringify(out.sources[name].ast) + '\n');
