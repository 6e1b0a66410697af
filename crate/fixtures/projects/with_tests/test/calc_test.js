var calc = require('../lib/calc');

function check(name, got, want) {
  console.log(name, got === want ? 'ok' : 'FAILED ' + got);
}

check('add', calc.add(2, 3), 5);
check('square', calc.square(4), 16);
