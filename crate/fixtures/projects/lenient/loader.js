if (!Math.twice) {
  var util = require('./util');
}

function load(n) {
  return util.twice(n);
}

module.exports = load;
