var shapes = require('./shapes');

function area(r) {
  return shapes.PI * shapes.square(r);
}

module.exports = area;
