var colors = require('./colors');

function dump(table) {
  for (var k in table) {
    console.log(k, table[k]);
  }
}

dump(colors);
