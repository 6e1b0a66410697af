var fs = require('fs');
module.exports = function read(p) {
  return fs.readFileSync(p, 'utf8');
};
