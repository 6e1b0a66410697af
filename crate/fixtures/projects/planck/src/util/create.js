function create(proto, props) {
  var obj = Object.create(proto);
  for (var key in props) {
    obj[key] = props[key];
  }
  return obj;
}

module.exports = create;
