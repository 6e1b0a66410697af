var units = {};
units.cm = 0.01;
units.km = 1000;
module.exports = units;
