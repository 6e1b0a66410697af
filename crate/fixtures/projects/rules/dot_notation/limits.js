var limits = {};
limits['max-size'] = 10;
limits.min = 1;
module.exports = limits;
