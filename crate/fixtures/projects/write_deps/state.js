exports.count = 0;
exports.label = 'none';
exports.read = function() {
  return exports.label + ':' + exports.count;
};
