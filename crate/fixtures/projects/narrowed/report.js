var area = require('./area');

exports.describe = function(r) {
  return 'circle of radius ' + r + ' has area ' + area(r).toFixed(2);
};
