function load() {
  var util = require('./util');
  return util.twice(2);
}
module.exports = load;
