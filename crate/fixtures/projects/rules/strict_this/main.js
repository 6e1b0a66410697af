var util = require('./util');
console.log(util.twice(21));
